//! Fast semi-transitivity test for split graphs `G_o(M)`.
//!
//! A row without a `0` is a clique vertex in disguise. If it is
//! `1^r (-1)^(n-r)` it can be folded into the clique: delete the row and
//! insert a zero column after column `r`, which yields an isomorphic graph.
//! Any other zero-free row closes a directed 3-cycle. Once every row holds
//! a `0`, the graph is semi-transitive iff
//!
//! 1. every row is `0^r 1^s 0^t`, `0^r (-1)^s 0^t` or `1^a 0^b (-1)^c`, and
//! 2. for every row `1^a 0^b (-1)^c` with `a, b, c > 0`, no other distinct
//!    row has equal nonzero entries at positions `a` and `a+b+1`.
//!
//! Condition 2 only forbids *equal* signs. A nested row such as `1 1 0 -1`
//! next to `1 0 0 -1` has `1` and `-1` at positions 1 and 4 and is
//! harmless; [`PairRule::AnyNonzero`] keeps the stricter variant that
//! rejects it, for comparison.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::classify::{classify_row, RowForm};
use crate::matrix::TritMatrix;
use crate::rle::RleRow;
use crate::trit::Trit;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairRule {
    /// Violation iff the other row has the same nonzero value at both key
    /// positions. Agrees with the brute-force oracle.
    #[default]
    SameSign,
    /// Violation iff the other row is nonzero at both key positions.
    AnyNonzero,
}

/// Which zero-free row is folded first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FullRowOrder {
    #[default]
    TopDown,
    BottomUp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// Every remaining row contains a `0`. `rows` may be empty.
    Normalized { rows: Vec<RleRow>, width: usize },
    NotSemiTransitive(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("row {row} has no 0; fold zero-free rows before the row-pattern test")]
    RowWithoutZero { row: RleRow },
}

fn cyclic_positions(row: &RleRow) -> Option<(usize, usize)> {
    let cells = row.to_dense();
    let q = cells.iter().position(|&t| t == Trit::Neg)?;
    let r = cells[q..].iter().position(|&t| t == Trit::Pos)? + q;
    Some((q + 1, r + 1))
}

/// Folds every zero-free row into the clique.
///
/// All `rows` must have length `width`. Dense matrices pass every row,
/// pattern sets pass each distinct row once.
pub fn reduce_full_rows(rows: &[RleRow], width: usize, order: FullRowOrder) -> Reduction {
    assert!(rows.iter().all(|r| r.len() == width), "all rows must have length {width}");
    let mut rows = rows.to_vec();
    let mut width = width;
    loop {
        let pick = match order {
            FullRowOrder::TopDown => rows.iter().position(|r| !r.contains(Trit::Zero)),
            FullRowOrder::BottomUp => rows.iter().rposition(|r| !r.contains(Trit::Zero)),
        };
        let Some(idx) = pick else {
            return Reduction::Normalized { rows, width };
        };
        let row = rows.remove(idx);
        let RowForm::FullSplit { r } = classify_row(&row).form else {
            let positions = cyclic_positions(&row).expect("zero-free row that is not 1^r(-1)^s has -1 before 1");
            return Reduction::NotSemiTransitive(Witness::CyclicRow { row, positions });
        };
        for other in rows.iter_mut() {
            *other = other.with_zero_inserted(r);
        }
        width += 1;
    }
}

pub fn reduce_matrix(m: &TritMatrix) -> Reduction {
    reduce_full_rows(&m.rle_rows(), m.cols(), FullRowOrder::TopDown)
}

fn pair_violation(distinct: &BTreeSet<&RleRow>, rule: PairRule) -> Option<Witness> {
    for &row in distinct {
        let Some((p, q)) = classify_row(row).type_c_key else { continue };
        for &other in distinct {
            if other == row {
                continue;
            }
            let (x, y) = (other.get(p).unwrap_or(Trit::Zero), other.get(q).unwrap_or(Trit::Zero));
            let clash = match rule {
                PairRule::SameSign => x != Trit::Zero && x == y,
                PairRule::AnyNonzero => x != Trit::Zero && y != Trit::Zero,
            };
            if clash {
                return Some(Witness::PairViolation { row: row.clone(), other: other.clone(), positions: (p, q) });
            }
        }
    }
    None
}

/// The row-pattern test on rows that all contain a `0`.
pub fn theorem_check(rows: &[RleRow], rule: PairRule) -> Result<Verdict, CheckError> {
    if let Some(row) = rows.iter().find(|r| !r.contains(Trit::Zero)) {
        return Err(CheckError::RowWithoutZero { row: row.clone() });
    }
    Ok(theorem_check_unnormalized(rows, rule))
}

/// The row-pattern test applied as-is, without requiring a `0` in every
/// row. Zero-free rows of the form `1^r (-1)^s` pass condition 1. This is
/// not a decision procedure; see [`check_split`].
pub fn theorem_check_unnormalized(rows: &[RleRow], rule: PairRule) -> Verdict {
    for row in rows {
        if classify_row(row).is_invalid() {
            return Verdict::NotSemiTransitive(Witness::InvalidRow { row: row.clone() });
        }
    }
    let distinct: BTreeSet<&RleRow> = rows.iter().collect();
    match pair_violation(&distinct, rule) {
        Some(w) => Verdict::NotSemiTransitive(w),
        None => Verdict::SemiTransitive,
    }
}

/// Decides semi-transitivity of `G_o(M)` for the rows of `M`.
pub fn check_split_rows(rows: &[RleRow], width: usize) -> Verdict {
    check_split_rows_with(rows, width, FullRowOrder::TopDown)
}

pub fn check_split_rows_with(rows: &[RleRow], width: usize, order: FullRowOrder) -> Verdict {
    if width == 1 {
        // G_o(M) is a star
        return Verdict::SemiTransitive;
    }
    match reduce_full_rows(rows, width, order) {
        Reduction::NotSemiTransitive(w) => Verdict::NotSemiTransitive(w),
        Reduction::Normalized { rows, .. } => {
            theorem_check(&rows, PairRule::SameSign).expect("normalized rows all contain a 0")
        }
    }
}

pub fn check_split_set(rows: &BTreeSet<RleRow>) -> Verdict {
    let width = rows.first().map_or(0, RleRow::len);
    let rows: Vec<RleRow> = rows.iter().cloned().collect();
    check_split_rows(&rows, width)
}

pub fn check_split(m: &TritMatrix) -> Verdict {
    check_split_rows(&m.rle_rows(), m.cols())
}
