//! The 2-D morphism `0 -> A`, `1 -> B`, `-1 -> C` and its iterates
//! `M^k(A,B,C)`, starting from `M^0 = [0]`.
//!
//! [`iterate`] materializes `M^k` densely. [`patterns_at`] computes only
//! the set of distinct rows `R^k(A,B,C)` in run-length form, which stays
//! small for much larger `k`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::checker::check_split_set;
use crate::matrix::{ParseError, TritMatrix};
use crate::rle::RleRow;
use crate::trit::Trit;
use crate::verdict::Verdict;

pub type PatternSet = BTreeSet<RleRow>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("A, B and C must share one shape, got {a:?}, {b:?}, {c:?}")]
    ShapeMismatch { a: (usize, usize), b: (usize, usize), c: (usize, usize) },
    #[error("A has no 0, so the limit graph G_o(A,B,C) is not well defined")]
    AWithoutZero,
    #[error("M^{k} has {cells} cells, above the budget of {limit}")]
    CellBudget { k: u32, cells: u128, limit: u64 },
    #[error("R^{k} has more than {limit} patterns")]
    PatternBudget { k: u32, limit: usize },
    #[error("rows of M^{k} are too long to index")]
    LengthOverflow { k: u32 },
    #[error("triple file must contain three matrices separated by '---' lines, found {found}")]
    SectionCount { found: usize },
    #[error("matrix {}: {source}", ["A", "B", "C"][*index])]
    Parse { index: usize, source: ParseError },
}

/// Resource limits for materializing iterates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_cells: u64,
    pub max_patterns: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_cells: 10_000_000, max_patterns: 100_000 }
    }
}

/// Three blocks of one shape. `a_has_zero` records whether the limit graph
/// is well defined; operations that need it check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismTriple {
    a: TritMatrix,
    b: TritMatrix,
    c: TritMatrix,
    a_has_zero: bool,
}

impl MorphismTriple {
    pub fn new(a: TritMatrix, b: TritMatrix, c: TritMatrix) -> Result<Self, MorphismError> {
        let shape = |m: &TritMatrix| (m.rows(), m.cols());
        if shape(&a) != shape(&b) || shape(&a) != shape(&c) {
            return Err(MorphismError::ShapeMismatch { a: shape(&a), b: shape(&b), c: shape(&c) });
        }
        let a_has_zero = a.contains(Trit::Zero);
        Ok(Self { a, b, c, a_has_zero })
    }

    /// Parses three matrices separated by lines holding only `---`.
    pub fn parse(text: &str) -> Result<Self, MorphismError> {
        let mut sections: Vec<(usize, String)> = vec![(1, String::new())];
        for (i, line) in text.lines().enumerate() {
            if line.trim() == "---" {
                sections.push((i + 2, String::new()));
            } else {
                let current = &mut sections.last_mut().expect("nonempty").1;
                current.push_str(line);
                current.push('\n');
            }
        }
        if sections.len() != 3 {
            return Err(MorphismError::SectionCount { found: sections.len() });
        }
        let mut mats = Vec::with_capacity(3);
        for (index, (first_line, body)) in sections.iter().enumerate() {
            let m = TritMatrix::parse_at(body, *first_line).map_err(|source| MorphismError::Parse { index, source })?;
            mats.push(m);
        }
        let c = mats.pop().expect("three sections");
        let b = mats.pop().expect("three sections");
        let a = mats.pop().expect("three sections");
        Self::new(a, b, c)
    }

    pub fn a(&self) -> &TritMatrix {
        &self.a
    }

    pub fn b(&self) -> &TritMatrix {
        &self.b
    }

    pub fn c(&self) -> &TritMatrix {
        &self.c
    }

    pub fn a_has_zero(&self) -> bool {
        self.a_has_zero
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// The block substituted for `t`.
    pub fn block(&self, t: Trit) -> &TritMatrix {
        match t {
            Trit::Zero => &self.a,
            Trit::Pos => &self.b,
            Trit::Neg => &self.c,
        }
    }

    pub(crate) fn require_zero_in_a(&self) -> Result<(), MorphismError> {
        if self.a_has_zero {
            Ok(())
        } else {
            Err(MorphismError::AWithoutZero)
        }
    }
}

/// Triple file layout: `A`, `---`, `B`, `---`, `C`.
impl fmt::Display for MorphismTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}---\n{}---\n{}", self.a, self.b, self.c)
    }
}

/// Replaces every cell of `m` by its block; the block for cell `(i, j)`
/// occupies rows `(i-1)m+1..=im` and columns `(j-1)n+1..=jn`.
pub fn substitute(m: &TritMatrix, t: &MorphismTriple) -> TritMatrix {
    let (bm, bn) = (t.rows(), t.cols());
    let (rows, cols) = (m.rows() * bm, m.cols() * bn);
    let mut cells = Vec::with_capacity(rows * cols);
    for src in m.row_slices() {
        for r in 1..=bm {
            for &v in src {
                cells.extend_from_slice(t.block(v).row(r));
            }
        }
    }
    TritMatrix::from_cells(rows, cols, cells).expect("block shape is consistent")
}

/// `M^k(A,B,C)`, refusing when `m^k * n^k` exceeds the cell budget.
pub fn iterate(t: &MorphismTriple, k: u32, budget: Budget) -> Result<TritMatrix, MorphismError> {
    let side = |d: usize| (d as u128).checked_pow(k);
    let cells = side(t.rows())
        .zip(side(t.cols()))
        .and_then(|(r, c)| r.checked_mul(c))
        .unwrap_or(u128::MAX);
    if cells > budget.max_cells as u128 {
        return Err(MorphismError::CellBudget { k, cells, limit: budget.max_cells });
    }
    let mut m = TritMatrix::zeros(1, 1).expect("1x1");
    for _ in 0..k {
        m = substitute(&m, t);
    }
    Ok(m)
}

/// Block rows in run-length form, indexed by trit then by 0-based row.
struct BlockRows([Vec<RleRow>; 3]);

impl BlockRows {
    fn new(t: &MorphismTriple) -> Self {
        BlockRows([t.c().rle_rows(), t.a().rle_rows(), t.b().rle_rows()])
    }

    fn get(&self, v: Trit, row: usize) -> &RleRow {
        &self.0[(v.value() + 1) as usize][row]
    }
}

fn expand(patterns: &PatternSet, blocks: &BlockRows, m: usize) -> PatternSet {
    let mut out = PatternSet::new();
    for p in patterns {
        for i in 0..m {
            let mut row = RleRow::new();
            for &(v, len) in p.runs() {
                row.extend_repeated(blocks.get(v, i), len);
            }
            out.insert(row);
        }
    }
    out
}

/// One application of the morphism to a set of row patterns: every
/// pattern yields `m` rows, row `i` concatenating row `i` of the block for
/// each entry.
pub fn pattern_step(patterns: &PatternSet, t: &MorphismTriple) -> PatternSet {
    expand(patterns, &BlockRows::new(t), t.rows())
}

fn base_patterns() -> PatternSet {
    [RleRow::constant(Trit::Zero, 1)].into_iter().collect()
}

/// Successive pattern sets `R^1, R^2, ...` of a triple. Stops after the
/// first error.
pub struct PatternLevels<'a> {
    triple: &'a MorphismTriple,
    blocks: BlockRows,
    current: PatternSet,
    k: u32,
    budget: Budget,
    failed: bool,
}

impl<'a> PatternLevels<'a> {
    pub fn new(triple: &'a MorphismTriple, budget: Budget) -> Self {
        Self { triple, blocks: BlockRows::new(triple), current: base_patterns(), k: 0, budget, failed: false }
    }

    /// Advances one level and borrows the new set.
    pub fn advance(&mut self) -> Result<(u32, &PatternSet), MorphismError> {
        let k = self.k + 1;
        let fits = (self.triple.cols() as u128).checked_pow(k).is_some_and(|w| w <= usize::MAX as u128);
        if self.failed || !fits {
            self.failed = true;
            return Err(MorphismError::LengthOverflow { k });
        }
        let next = expand(&self.current, &self.blocks, self.triple.rows());
        if next.len() > self.budget.max_patterns {
            self.failed = true;
            return Err(MorphismError::PatternBudget { k, limit: self.budget.max_patterns });
        }
        self.current = next;
        self.k = k;
        Ok((k, &self.current))
    }
}

impl Iterator for PatternLevels<'_> {
    type Item = Result<(u32, PatternSet), MorphismError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        Some(self.advance().map(|(k, set)| (k, set.clone())))
    }
}

/// `R^k(A,B,C)`.
pub fn patterns_at(t: &MorphismTriple, k: u32, budget: Budget) -> Result<PatternSet, MorphismError> {
    let mut levels = PatternLevels::new(t, budget);
    for _ in 0..k {
        levels.advance()?;
    }
    Ok(levels.current)
}

/// Semi-transitivity of `G_o^k(A,B,C)`, decided on `R^k`.
pub fn check_iteration(t: &MorphismTriple, k: u32, budget: Budget) -> Result<Verdict, MorphismError> {
    t.require_zero_in_a()?;
    Ok(check_split_set(&patterns_at(t, k, budget)?))
}

/// Renders a pattern set in the dump format, one `v:len,...` per line.
pub fn dump_patterns(patterns: &PatternSet) -> String {
    patterns.iter().map(|p| format!("{p}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> TritMatrix {
        TritMatrix::from_values(rows).unwrap()
    }

    fn example_triple() -> MorphismTriple {
        MorphismTriple::new(m(&[&[0, 1], &[0, -1]]), m(&[&[-1, -1], &[1, 0]]), m(&[&[1, 1], &[-1, -1]])).unwrap()
    }

    fn printed_m2() -> TritMatrix {
        m(&[&[0, 1, -1, -1], &[0, -1, 1, 0], &[0, 1, 1, 1], &[0, -1, -1, -1]])
    }

    #[test]
    fn substitution_of_zero_is_a() {
        let t = example_triple();
        assert_eq!(&substitute(&m(&[&[0]]), &t), t.a());
        assert_eq!(substitute(t.a(), &t), printed_m2());
        let zeros = substitute(&TritMatrix::zeros(2, 3).unwrap(), &t);
        assert_eq!((zeros.rows(), zeros.cols()), (4, 6));
        for bi in 0..2 {
            for bj in 0..3 {
                for r in 1..=2 {
                    for c in 1..=2 {
                        assert_eq!(zeros.get(bi * 2 + r, bj * 2 + c), t.a().get(r, c));
                    }
                }
            }
        }
    }

    #[test]
    fn iterates_of_example() {
        let t = example_triple();
        assert_eq!(iterate(&t, 0, Budget::default()).unwrap(), m(&[&[0]]));
        assert_eq!(&iterate(&t, 1, Budget::default()).unwrap(), t.a());
        assert_eq!(iterate(&t, 2, Budget::default()).unwrap(), printed_m2());
    }

    #[test]
    fn zero_a_gives_zero_iterates() {
        let t = MorphismTriple::new(TritMatrix::zeros(2, 2).unwrap(), m(&[&[1, -1], &[0, 1]]), m(&[&[-1, 1], &[1, 1]])).unwrap();
        let m3 = iterate(&t, 3, Budget::default()).unwrap();
        assert_eq!((m3.rows(), m3.cols()), (8, 8));
        assert!(m3.is_all(Trit::Zero));
        for k in 0..=4 {
            assert!(check_iteration(&t, k, Budget::default()).unwrap().is_semi_transitive());
        }
    }

    #[test]
    fn cell_budget() {
        let t = example_triple();
        let tight = Budget { max_cells: 100, ..Budget::default() };
        assert_eq!(iterate(&t, 4, tight).unwrap_err(), MorphismError::CellBudget { k: 4, cells: 256, limit: 100 });
        assert!(iterate(&t, 3, tight).is_ok());
        assert!(matches!(iterate(&t, 200, Budget::default()), Err(MorphismError::CellBudget { .. })));
    }

    #[test]
    fn pattern_steps() {
        let t = example_triple();
        assert_eq!(pattern_step(&base_patterns(), &t), t.a().row_set());
        assert_eq!(pattern_step(&t.a().row_set(), &t), printed_m2().row_set());
        assert_eq!(patterns_at(&t, 0, Budget::default()).unwrap(), base_patterns());
        assert_eq!(patterns_at(&t, 1, Budget::default()).unwrap(), t.a().row_set());
        assert_eq!(patterns_at(&t, 2, Budget::default()).unwrap().len(), 4);
    }

    #[test]
    fn layered_triples_keep_constant_rows() {
        let t = MorphismTriple::new(
            m(&[&[0, 0], &[1, 1], &[-1, -1]]),
            TritMatrix::filled(3, 2, Trit::Pos).unwrap(),
            TritMatrix::filled(3, 2, Trit::Neg).unwrap(),
        )
        .unwrap();
        for k in 1..=3 {
            let pats = patterns_at(&t, k, Budget::default()).unwrap();
            assert!(pats.iter().all(RleRow::is_constant));
            assert_eq!(pats, iterate(&t, k, Budget::default()).unwrap().row_set());
        }
    }

    #[test]
    fn example_iteration_verdicts() {
        let t = example_triple();
        assert!(check_iteration(&t, 1, Budget::default()).unwrap().is_semi_transitive());
        assert!(!check_iteration(&t, 2, Budget::default()).unwrap().is_semi_transitive());
    }

    #[test]
    fn requires_zero_in_a() {
        let t = MorphismTriple::new(m(&[&[1, 1], &[1, -1]]), m(&[&[1, 1], &[1, 1]]), m(&[&[1, 1], &[1, 1]])).unwrap();
        assert!(!t.a_has_zero());
        assert_eq!(check_iteration(&t, 1, Budget::default()), Err(MorphismError::AWithoutZero));
    }

    #[test]
    fn pattern_budget() {
        let t = MorphismTriple::new(m(&[&[0, 1], &[1, 0], &[0, -1]]), m(&[&[1, 0], &[0, 1], &[-1, 0]]), m(&[&[0, 0], &[-1, 1], &[1, -1]])).unwrap();
        let tight = Budget { max_patterns: 3, ..Budget::default() };
        assert!(matches!(patterns_at(&t, 3, tight), Err(MorphismError::PatternBudget { .. })));
        let mut levels = PatternLevels::new(&t, tight);
        assert!(levels.next().unwrap().is_ok());
        assert!(levels.next().unwrap().is_err());
        assert!(levels.next().is_none());
    }

    #[test]
    fn triple_file_format() {
        let text = "0 1\n0 -1\n---\n-1 -1\n1 0\n---\n1 1\n-1 -1\n";
        let t = MorphismTriple::parse(text).unwrap();
        assert_eq!(t, example_triple());
        assert_eq!(t.to_string(), text);
        assert_eq!(MorphismTriple::parse("0\n---\n1\n").unwrap_err(), MorphismError::SectionCount { found: 2 });
        match MorphismTriple::parse("0 1\n---\n1 1\n---\n1 3\n").unwrap_err() {
            MorphismError::Parse { index: 2, source } => assert_eq!((source.line, source.col), (5, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(MorphismTriple::parse("0\n---\n1 1\n---\n1\n"), Err(MorphismError::ShapeMismatch { .. })));
    }

    #[test]
    fn dump_format() {
        let pats = patterns_at(&example_triple(), 1, Budget::default()).unwrap();
        assert_eq!(dump_patterns(&pats), "0:1,-1:1\n0:1,1:1\n");
    }
}
