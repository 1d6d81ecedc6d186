//! Row-form classification.
//!
//! Forms are tested in a fixed precedence. Rows containing a `0` are
//! matched against `0^r 1^s 0^t`, then `0^r (-1)^s 0^t`, then
//! `1^a 0^b (-1)^c`; rows without a `0` are either `1^r (-1)^(n-r)` or
//! invalid.

use serde::Serialize;

use crate::rle::RleRow;
use crate::trit::Trit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "form", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowForm {
    /// `0^r 1^s 0^t`
    Zoz { r: usize, s: usize, t: usize },
    /// `0^r (-1)^s 0^t`
    Znz { r: usize, s: usize, t: usize },
    /// `1^a 0^b (-1)^c`
    Pzn { a: usize, b: usize, c: usize },
    /// `1^r (-1)^(n-r)` with no `0`
    FullSplit { r: usize },
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RowClassification {
    pub has_zero: bool,
    pub form: RowForm,
    /// `(a, a+b+1)` for a `1^a 0^b (-1)^c` row with `a, b, c > 0`.
    pub type_c_key: Option<(usize, usize)>,
}

impl RowClassification {
    pub fn is_invalid(&self) -> bool {
        self.form == RowForm::Invalid
    }
}

/// Matches the runs of `row` against the block sequence `blocks`, each
/// block consuming zero or more consecutive runs of its trit. Returns the
/// block lengths, assigning each run to the earliest block that fits.
fn match_blocks<const N: usize>(row: &RleRow, blocks: [Trit; N]) -> Option<[usize; N]> {
    let mut lens = [0usize; N];
    let mut slot = 0;
    for &(t, len) in row.runs() {
        while slot < N && blocks[slot] != t {
            slot += 1;
        }
        if slot == N {
            return None;
        }
        lens[slot] += len;
        slot += 1;
    }
    Some(lens)
}

pub fn classify_row(row: &RleRow) -> RowClassification {
    use Trit::*;
    let has_zero = row.contains(Zero);
    if !has_zero {
        let form = match match_blocks(row, [Pos, Neg]) {
            Some([r, _]) => RowForm::FullSplit { r },
            None => RowForm::Invalid,
        };
        return RowClassification { has_zero, form, type_c_key: None };
    }
    if let Some([r, s, t]) = match_blocks(row, [Zero, Pos, Zero]) {
        return RowClassification { has_zero, form: RowForm::Zoz { r, s, t }, type_c_key: None };
    }
    if let Some([r, s, t]) = match_blocks(row, [Zero, Neg, Zero]) {
        return RowClassification { has_zero, form: RowForm::Znz { r, s, t }, type_c_key: None };
    }
    if let Some([a, b, c]) = match_blocks(row, [Pos, Zero, Neg]) {
        let type_c_key = (a > 0 && b > 0 && c > 0).then_some((a, a + b + 1));
        return RowClassification { has_zero, form: RowForm::Pzn { a, b, c }, type_c_key };
    }
    RowClassification { has_zero, form: RowForm::Invalid, type_c_key: None }
}

pub fn classify_dense(cells: &[Trit]) -> RowClassification {
    classify_row(&RleRow::from_dense(cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Trit::*;

    fn row(v: &[i8]) -> RleRow {
        RleRow::from_dense(&v.iter().map(|&x| Trit::from_value(x).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn invalid_row_from_second_iterate() {
        let c = classify_row(&row(&[0, 1, -1, -1]));
        assert_eq!(c.form, RowForm::Invalid);
        assert!(c.has_zero);
        assert_eq!(c.type_c_key, None);
    }

    #[test]
    fn all_zero_is_zoz() {
        let c = classify_row(&row(&[0, 0, 0, 0]));
        assert_eq!(c.form, RowForm::Zoz { r: 4, s: 0, t: 0 });
        assert!(c.has_zero);
    }

    #[test]
    fn type_c_row() {
        let c = classify_row(&row(&[1, 0, 0, -1]));
        assert_eq!(c.form, RowForm::Pzn { a: 1, b: 2, c: 1 });
        assert_eq!(c.type_c_key, Some((1, 4)));
    }

    #[test]
    fn full_split_rows() {
        let c = classify_row(&row(&[1, 1, -1, -1]));
        assert_eq!(c.form, RowForm::FullSplit { r: 2 });
        assert!(!c.has_zero);
        assert_eq!(classify_row(&row(&[1, 1, 1])).form, RowForm::FullSplit { r: 3 });
        assert_eq!(classify_row(&row(&[-1, -1])).form, RowForm::FullSplit { r: 0 });
        assert_eq!(classify_row(&row(&[-1, 1])).form, RowForm::Invalid);
    }

    #[test]
    fn precedence() {
        // 1 0 matches both 0^r 1^s 0^t and 1^a 0^b (-1)^c
        assert_eq!(classify_row(&row(&[1, 0])).form, RowForm::Zoz { r: 0, s: 1, t: 1 });
        assert_eq!(classify_row(&row(&[0, -1])).form, RowForm::Znz { r: 1, s: 1, t: 0 });
        // 1 1 0 -1: only the mixed form fits
        assert_eq!(classify_row(&row(&[1, 1, 0, -1])).form, RowForm::Pzn { a: 2, b: 1, c: 1 });
        assert_eq!(classify_row(&row(&[1, 1, 0, -1])).type_c_key, Some((2, 4)));
        // b = 0 is impossible for a row with a zero; a = 0 or c = 0 gives no key
        assert_eq!(classify_row(&row(&[0, 0, -1])).form, RowForm::Znz { r: 2, s: 1, t: 0 });
        assert_eq!(classify_dense(&[Pos, Zero, Pos]).form, RowForm::Invalid);
        assert_eq!(classify_dense(&[Zero, Pos, Zero, Pos]).form, RowForm::Invalid);
    }
}
