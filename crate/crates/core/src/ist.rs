//! Index of semi-transitivity of a triple: the case-analysis classifier and
//! the empirical computation it is validated against.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::checker::check_split_set;
use crate::matrix::TritMatrix;
use crate::morphism::{Budget, MorphismError, MorphismTriple, PatternLevels};
use crate::rle::RleRow;
use crate::trit::Trit;

/// Which case of the dispatch decided a triple, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// One column: every iterate is a tree.
    Tree,
    AllZeroA,
    IndependentFromC,
    IndependentFromB,
    ALayered,
    ABNotLayered,
    ACNotLayered,
    ANotLayered,
    NoneLayered,
}

impl Branch {
    pub const ALL: [Branch; 9] = [
        Branch::Tree,
        Branch::AllZeroA,
        Branch::IndependentFromC,
        Branch::IndependentFromB,
        Branch::ALayered,
        Branch::ABNotLayered,
        Branch::ACNotLayered,
        Branch::ANotLayered,
        Branch::NoneLayered,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Branch::Tree => "n1-tree",
            Branch::AllZeroA => "all-zero-a",
            Branch::IndependentFromC => "independent-from-c",
            Branch::IndependentFromB => "independent-from-b",
            Branch::ALayered => "a-layered",
            Branch::ABNotLayered => "ab-not-layered-c-layered",
            Branch::ACNotLayered => "ac-not-layered-b-layered",
            Branch::ANotLayered => "a-not-layered-bc-layered",
            Branch::NoneLayered => "none-layered",
        }
    }

    pub fn from_label(s: &str) -> Option<Branch> {
        Branch::ALL.into_iter().find(|b| b.label() == s)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AllBut {
    LeftmostNegative,
    RightmostNegative,
    LeftmostPositive,
    RightmostPositive,
}

/// The condition that made a triple infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Tree,
    AllZeroA,
    /// A and the reachable block are layered.
    Layered,
    /// Rows of A are `a x^{n-1}` and the reachable block is all `x`.
    BorderedLeft,
    /// Rows of A are `x^{n-1} a` and the reachable block is all `x`.
    BorderedRight,
    AllLayered,
    AllButLeftmostNegative,
    AllButRightmostPositive,
    LeftZeroInvariant,
    RightZeroInvariant,
    /// `R(A) = {1^p 0 (-1)^{n-p-1}}` (or the `1^p 0 1^{n-p-1}` variant).
    CentralZero { p: usize },
}

impl Condition {
    pub fn label(self) -> String {
        match self {
            Condition::Tree => "tree".into(),
            Condition::AllZeroA => "all-zero-a".into(),
            Condition::Layered => "layered".into(),
            Condition::BorderedLeft => "bordered-left".into(),
            Condition::BorderedRight => "bordered-right".into(),
            Condition::AllLayered => "all-layered".into(),
            Condition::AllButLeftmostNegative => "all-but-leftmost-negative".into(),
            Condition::AllButRightmostPositive => "all-but-rightmost-positive".into(),
            Condition::LeftZeroInvariant => "left-0-invariant".into(),
            Condition::RightZeroInvariant => "right-0-invariant".into(),
            Condition::CentralZero { p } => format!("central-zero-p{p}"),
        }
    }
}

/// How to read the third infinite case of the A-not-layered branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Condition3Reading {
    /// Rows `1^p 0 (-1)^{n-p-1}`.
    #[default]
    Proof,
    /// Rows `1^p 0 1^{n-p-1}`; kept to show it disagrees with the iterates.
    Statement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IstVerdict {
    Infinite(Condition),
    Finite,
}

impl IstVerdict {
    pub fn is_infinite(self) -> bool {
        matches!(self, IstVerdict::Infinite(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            IstVerdict::Infinite(_) => "infinite",
            IstVerdict::Finite => "finite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Empirical {
    /// Smallest failing iterate.
    Index(u32),
    PassedUpTo(u32),
}

impl Empirical {
    pub fn to_json(self) -> Value {
        match self {
            Empirical::Index(k) => json!({ "index": k }),
            Empirical::PassedUpTo(k) => json!({ "passed_up_to": k }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IstResult {
    pub branch: Branch,
    pub verdict: IstVerdict,
    pub empirical: Option<Empirical>,
    /// Set when A is all zero but the other blocks would not satisfy the
    /// layered hypotheses of the general branches.
    pub note: Option<&'static str>,
}

impl IstResult {
    /// `None` until an empirical index is attached.
    pub fn agrees(&self) -> Option<bool> {
        self.empirical.map(|e| match (self.verdict, e) {
            (IstVerdict::Infinite(_), Empirical::PassedUpTo(_)) => true,
            (IstVerdict::Finite, Empirical::Index(_)) => true,
            _ => false,
        })
    }

    pub fn to_json(&self, triple_id: Option<u64>) -> Value {
        let condition = match self.verdict {
            IstVerdict::Infinite(c) => Value::String(c.label()),
            IstVerdict::Finite => Value::Null,
        };
        let mut v = json!({
            "triple_id": triple_id,
            "branch": self.branch.label(),
            "verdict": self.verdict.label(),
            "condition": condition,
            "empirical": self.empirical.map(Empirical::to_json),
        });
        if let Some(agrees) = self.agrees() {
            v["agrees"] = json!(agrees);
        }
        if let Some(note) = self.note {
            v["note"] = json!(note);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IstError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

fn constant(t: Trit, n: usize) -> RleRow {
    RleRow::constant(t, n)
}

fn lead(first: Trit, rest: Trit, n: usize) -> RleRow {
    RleRow::from_runs([(first, 1), (rest, n - 1)])
}

fn trail(rest: Trit, last: Trit, n: usize) -> RleRow {
    RleRow::from_runs([(rest, n - 1), (last, 1)])
}

fn rows_within(m: &TritMatrix, allowed: &[RleRow]) -> bool {
    m.rle_rows().iter().all(|r| allowed.contains(r))
}

/// `(from_b, from_c)`: no 1 in A and C, no -1 in A and B.
pub fn independence(t: &MorphismTriple) -> (bool, bool) {
    let from_b = !t.a().contains(Trit::Pos) && !t.c().contains(Trit::Pos);
    let from_c = !t.a().contains(Trit::Neg) && !t.b().contains(Trit::Neg);
    (from_b, from_c)
}

/// The positive variants constrain C and fix B to all 1: those are the
/// blocks a row starting or ending in `1^{n-1}` expands through.
pub fn detect_all_but(t: &MorphismTriple) -> Option<AllBut> {
    use Trit::{Neg, Pos, Zero};
    let n = t.cols();
    if n < 2 {
        return None;
    }
    let (a, b, c) = (t.a(), t.b(), t.c());
    let both = |x: &TritMatrix, allowed: &[RleRow]| rows_within(a, allowed) && rows_within(x, allowed);
    if c.is_all(Neg) && both(b, &[lead(Zero, Neg, n), lead(Pos, Neg, n)]) {
        return Some(AllBut::LeftmostNegative);
    }
    if c.is_all(Neg) && both(b, &[trail(Neg, Zero, n), trail(Neg, Pos, n)]) {
        return Some(AllBut::RightmostNegative);
    }
    if b.is_all(Pos) && both(c, &[lead(Zero, Pos, n), lead(Neg, Pos, n)]) {
        return Some(AllBut::LeftmostPositive);
    }
    if b.is_all(Pos) && both(c, &[trail(Pos, Zero, n), trail(Pos, Neg, n)]) {
        return Some(AllBut::RightmostPositive);
    }
    None
}

fn zero_invariant(t: &MorphismTriple, right: bool) -> bool {
    use Trit::{Neg, Pos, Zero};
    let n = t.cols();
    let edge = |x: Trit| if right { trail(x, Zero, n) } else { lead(Zero, x, n) };
    let (z_pos, z_neg, all_pos, all_neg) = (edge(Pos), edge(Neg), constant(Pos, n), constant(Neg, n));
    let a_rows = t.a().rle_rows();
    if !a_rows.iter().all(|r| [&z_pos, &all_pos, &z_neg, &all_neg].contains(&r)) {
        return false;
    }
    let signs = [all_pos.clone(), all_neg.clone()];
    if !rows_within(t.b(), &signs) || !rows_within(t.c(), &signs) {
        return false;
    }
    let follows = |x: &TritMatrix| {
        a_rows.iter().zip(x.rle_rows()).all(|(ar, xr)| {
            let want = if *ar == z_pos || *ar == all_pos { &all_pos } else { &all_neg };
            xr == *want
        })
    };
    (!a_rows.contains(&z_pos) || follows(t.b())) && (!a_rows.contains(&z_neg) || follows(t.c()))
}

/// `(left, right)` zero invariance.
pub fn zero_invariance(t: &MorphismTriple) -> (bool, bool) {
    if t.cols() < 2 {
        return (false, false);
    }
    (zero_invariant(t, false), zero_invariant(t, true))
}

fn central_zero(t: &MorphismTriple, reading: Condition3Reading) -> Option<usize> {
    use Trit::{Neg, Pos, Zero};
    let n = t.cols();
    if !t.b().is_all(Pos) || !t.c().is_all(Neg) {
        return None;
    }
    let set: BTreeSet<RleRow> = t.a().row_set();
    let tail = match reading {
        Condition3Reading::Proof => Neg,
        Condition3Reading::Statement => Pos,
    };
    (1..n.saturating_sub(1)).find(|&p| {
        let row = RleRow::from_runs([(Pos, p), (Zero, 1), (tail, n - p - 1)]);
        set.len() == 1 && set.contains(&row)
    })
}

fn bordered(t: &MorphismTriple, x: Trit, reach: &TritMatrix) -> Option<Condition> {
    let n = t.cols();
    if !reach.is_all(x) {
        return None;
    }
    let full = constant(x, n);
    if rows_within(t.a(), &[lead(Trit::Zero, x, n), full.clone()]) {
        Some(Condition::BorderedLeft)
    } else if rows_within(t.a(), &[trail(x, Trit::Zero, n), full]) {
        Some(Condition::BorderedRight)
    } else {
        None
    }
}

fn independent_case(t: &MorphismTriple, x: Trit, reach: &TritMatrix) -> IstVerdict {
    if t.a().is_layered() && reach.is_layered() {
        IstVerdict::Infinite(Condition::Layered)
    } else if let Some(c) = bordered(t, x, reach) {
        IstVerdict::Infinite(c)
    } else {
        IstVerdict::Finite
    }
}

fn infinite_if(cond: bool, c: Condition) -> IstVerdict {
    if cond {
        IstVerdict::Infinite(c)
    } else {
        IstVerdict::Finite
    }
}

pub fn classify_ist(t: &MorphismTriple) -> Result<IstResult, IstError> {
    classify_ist_with(t, Condition3Reading::Proof)
}

pub fn classify_ist_with(t: &MorphismTriple, reading: Condition3Reading) -> Result<IstResult, IstError> {
    t.require_zero_in_a()?;
    let done = |branch, verdict| Ok(IstResult { branch, verdict, empirical: None, note: None });
    if t.cols() == 1 {
        return done(Branch::Tree, IstVerdict::Infinite(Condition::Tree));
    }
    let (a, b, c) = (t.a(), t.b(), t.c());
    if a.is_all(Trit::Zero) {
        let note = (!b.is_layered() || !c.is_layered()).then_some("statement edge case");
        return Ok(IstResult { branch: Branch::AllZeroA, verdict: IstVerdict::Infinite(Condition::AllZeroA), empirical: None, note });
    }
    let (from_b, from_c) = independence(t);
    if from_c {
        return done(Branch::IndependentFromC, independent_case(t, Trit::Pos, b));
    }
    if from_b {
        return done(Branch::IndependentFromB, independent_case(t, Trit::Neg, c));
    }
    let (bl, cl) = (b.is_layered(), c.is_layered());
    if a.is_layered() {
        return done(Branch::ALayered, infinite_if(bl && cl, Condition::AllLayered));
    }
    match (bl, cl) {
        (false, true) => {
            let hit = detect_all_but(t) == Some(AllBut::LeftmostNegative);
            done(Branch::ABNotLayered, infinite_if(hit, Condition::AllButLeftmostNegative))
        }
        (true, false) => {
            let hit = detect_all_but(t) == Some(AllBut::RightmostPositive);
            done(Branch::ACNotLayered, infinite_if(hit, Condition::AllButRightmostPositive))
        }
        (true, true) => {
            let (left, right) = zero_invariance(t);
            let verdict = if left {
                IstVerdict::Infinite(Condition::LeftZeroInvariant)
            } else if right {
                IstVerdict::Infinite(Condition::RightZeroInvariant)
            } else if let Some(p) = central_zero(t, reading) {
                IstVerdict::Infinite(Condition::CentralZero { p })
            } else {
                IstVerdict::Finite
            };
            done(Branch::ANotLayered, verdict)
        }
        (false, false) => done(Branch::NoneLayered, IstVerdict::Finite),
    }
}

/// Smallest `k <= kmax` whose iterate is not semi-transitive.
pub fn empirical_ist(t: &MorphismTriple, kmax: u32) -> Result<Empirical, IstError> {
    empirical_ist_with(t, kmax, Budget::default())
}

pub fn empirical_ist_with(t: &MorphismTriple, kmax: u32, budget: Budget) -> Result<Empirical, IstError> {
    t.require_zero_in_a()?;
    let mut levels = PatternLevels::new(t, budget);
    for _ in 0..kmax {
        let (k, set) = levels.advance()?;
        if !check_split_set(set).is_semi_transitive() {
            return Ok(Empirical::Index(k));
        }
    }
    Ok(Empirical::PassedUpTo(kmax))
}

/// Classifier and empirical index together.
pub fn cross_validate(t: &MorphismTriple, kmax: u32, reading: Condition3Reading, budget: Budget) -> Result<IstResult, IstError> {
    let mut r = classify_ist_with(t, reading)?;
    r.empirical = Some(empirical_ist_with(t, kmax, budget)?);
    Ok(r)
}
