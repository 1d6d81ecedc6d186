//! Dense matrices over {-1, 0, 1} and their text format.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rle::RleRow;
use crate::trit::Trit;

/// An `m x n` matrix over {-1, 0, 1}, `m, n >= 1`, stored row-major.
///
/// Row and column arguments are 1-based throughout the public API.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TritMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Trit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyShape { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("value {value} at row {row}, col {col} is not in {{-1, 0, 1}}")]
    InvalidValue { row: usize, col: usize, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("row has {found} entries, expected {expected}")]
    Ragged { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
}

/// A matrix text error with 1-based line and column (column counts tokens).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, col {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl TritMatrix {
    pub fn filled(rows: usize, cols: usize, t: Trit) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyShape { rows, cols });
        }
        Ok(Self { rows, cols, cells: vec![t; rows * cols] })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        Self::filled(rows, cols, Trit::Zero)
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<Trit>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyShape { rows, cols });
        }
        if cells.len() != rows * cols {
            return Err(MatrixError::RaggedRow { row: cells.len() / cols + 1, expected: cols, found: cells.len() % cols });
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<Trit>>) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(MatrixError::EmptyShape { rows: m, cols: n });
        }
        let mut cells = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::RaggedRow { row: i + 1, expected: n, found: row.len() });
            }
            cells.extend(row);
        }
        Ok(Self { rows: m, cols: n, cells })
    }

    /// Convenience constructor from integer rows.
    pub fn from_values<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut cells = Vec::with_capacity(row.as_ref().len());
            for (j, &v) in row.as_ref().iter().enumerate() {
                let t = i8::try_from(v)
                    .ok()
                    .and_then(Trit::from_value)
                    .ok_or(MatrixError::InvalidValue { row: i + 1, col: j + 1, value: v })?;
                cells.push(t);
            }
            out.push(cells);
        }
        Self::from_rows(out)
    }

    /// The `index`-th matrix of the given shape in row-major base-3
    /// counting order with digits (-1, 0, 1): the first cell is the most
    /// significant digit, index 0 is the all-(-1) matrix.
    pub fn from_index(rows: usize, cols: usize, mut index: u64) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyShape { rows, cols });
        }
        let mut cells = vec![Trit::Neg; rows * cols];
        for cell in cells.iter_mut().rev() {
            *cell = Trit::ALL[(index % 3) as usize];
            index /= 3;
        }
        Ok(Self { rows, cols, cells })
    }

    /// Inverse of [`TritMatrix::from_index`].
    pub fn index(&self) -> u64 {
        self.cells.iter().fold(0u64, |acc, &t| acc * 3 + (t.value() + 1) as u64)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[Trit] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Trit {
        assert!((1..=self.rows).contains(&row) && (1..=self.cols).contains(&col), "({row}, {col}) out of range");
        self.cells[(row - 1) * self.cols + col - 1]
    }

    pub fn set(&mut self, row: usize, col: usize, t: Trit) {
        assert!((1..=self.rows).contains(&row) && (1..=self.cols).contains(&col), "({row}, {col}) out of range");
        self.cells[(row - 1) * self.cols + col - 1] = t;
    }

    pub fn row(&self, row: usize) -> &[Trit] {
        assert!((1..=self.rows).contains(&row), "row {row} out of range");
        &self.cells[(row - 1) * self.cols..row * self.cols]
    }

    pub fn row_slices(&self) -> impl Iterator<Item = &[Trit]> {
        self.cells.chunks(self.cols)
    }

    pub fn rle_rows(&self) -> Vec<RleRow> {
        self.row_slices().map(RleRow::from_dense).collect()
    }

    pub fn contains(&self, t: Trit) -> bool {
        self.cells.contains(&t)
    }

    pub fn is_all(&self, t: Trit) -> bool {
        self.cells.iter().all(|&c| c == t)
    }

    /// True iff every row is constant.
    pub fn is_layered(&self) -> bool {
        self.row_slices().all(|r| r.iter().all(|&t| t == r[0]))
    }

    /// `R(M)`: the distinct rows of the matrix.
    pub fn row_set(&self) -> BTreeSet<RleRow> {
        self.row_slices().map(RleRow::from_dense).collect()
    }

    /// Parses the text format with line numbers in errors starting at
    /// `first_line`.
    pub(crate) fn parse_at(text: &str, first_line: usize) -> Result<Self, ParseError> {
        let mut rows: Vec<Vec<Trit>> = Vec::new();
        let mut first_row_line = first_line;
        for (offset, line) in text.lines().enumerate() {
            let line_no = first_line + offset;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let mut row = Vec::with_capacity(tokens.len());
            for (j, tok) in tokens.iter().enumerate() {
                let t = Trit::from_token(tok).ok_or_else(|| ParseError {
                    line: line_no,
                    col: j + 1,
                    kind: ParseErrorKind::InvalidToken(tok.to_string()),
                })?;
                row.push(t);
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(ParseError {
                        line: line_no,
                        col: first.len().min(row.len()) + 1,
                        kind: ParseErrorKind::Ragged { expected: first.len(), found: row.len() },
                    });
                }
            } else {
                first_row_line = line_no;
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(ParseError { line: first_row_line, col: 1, kind: ParseErrorKind::Empty });
        }
        Ok(Self::from_rows(rows).expect("shape validated while parsing"))
    }
}

impl FromStr for TritMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_at(s, 1)
    }
}

/// Parses whitespace-separated `-1`/`0`/`1` tokens, one row per line.
/// Blank lines are ignored.
pub fn parse_matrix(text: &str) -> Result<TritMatrix, ParseError> {
    text.parse()
}

/// Single-space separated entries, one row per line, trailing newline.
impl fmt::Display for TritMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_slices() {
            for (j, t) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> TritMatrix {
        TritMatrix::from_values(rows).unwrap()
    }

    #[test]
    fn parses_example_matrix() {
        let parsed = parse_matrix("0 1 0 1\n-1 0 -1 -1\n0 0 0 1").unwrap();
        assert_eq!(parsed, m(&[&[0, 1, 0, 1], &[-1, 0, -1, -1], &[0, 0, 0, 1]]));
        assert_eq!((parsed.rows(), parsed.cols()), (3, 4));
        assert_eq!(parsed.get(2, 1), Trit::Neg);
    }

    #[test]
    fn parses_single_zero() {
        let z = parse_matrix("0").unwrap();
        assert_eq!(z, TritMatrix::zeros(1, 1).unwrap());
        assert_eq!(z.to_string(), "0\n");
    }

    #[test]
    fn invalid_token_position() {
        let err = parse_matrix("0 2").unwrap_err();
        assert_eq!(err, ParseError { line: 1, col: 2, kind: ParseErrorKind::InvalidToken("2".into()) });
        let err = parse_matrix("0 1\n1 -1\n1 x").unwrap_err();
        assert_eq!((err.line, err.col), (3, 2));
    }

    #[test]
    fn ragged_and_empty() {
        let err = parse_matrix("0 1\n1").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.kind, ParseErrorKind::Ragged { expected: 2, found: 1 });
        assert_eq!(parse_matrix("").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_matrix(" \n\n").unwrap_err().kind, ParseErrorKind::Empty);
    }

    #[test]
    fn renderer_normalizes_whitespace() {
        let parsed = parse_matrix("  0\t1 \n\n-1   0\n").unwrap();
        assert_eq!(parsed.to_string(), "0 1\n-1 0\n");
    }

    #[test]
    fn layered() {
        assert!(m(&[&[1, 1], &[-1, -1]]).is_layered());
        assert!(!m(&[&[0, 1], &[0, -1]]).is_layered());
        assert!(m(&[&[0, 0, 0]]).is_layered());
        assert!(m(&[&[-1]]).is_layered());
    }

    #[test]
    fn row_sets() {
        let set = m(&[&[0, 1], &[0, 1], &[0, -1]]).row_set();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&RleRow::from_dense(&[Trit::Zero, Trit::Pos])));
        assert!(set.contains(&RleRow::from_dense(&[Trit::Zero, Trit::Neg])));
        let zero = TritMatrix::zeros(3, 3).unwrap().row_set();
        assert_eq!(zero.into_iter().collect::<Vec<_>>(), vec![RleRow::constant(Trit::Zero, 3)]);
    }

    #[test]
    fn enumeration_order() {
        assert!(TritMatrix::from_index(2, 2, 0).unwrap().is_all(Trit::Neg));
        assert_eq!(TritMatrix::from_index(1, 2, 1).unwrap(), m(&[&[-1, 0]]));
        assert_eq!(TritMatrix::from_index(1, 2, 3).unwrap(), m(&[&[0, -1]]));
        assert!(TritMatrix::from_index(2, 2, 80).unwrap().is_all(Trit::Pos));
        for i in 0..81 {
            assert_eq!(TritMatrix::from_index(2, 2, i).unwrap().index(), i);
        }
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(TritMatrix::zeros(0, 3), Err(MatrixError::EmptyShape { .. })));
        assert!(matches!(TritMatrix::from_values(&[vec![0i64, 1], vec![1]]), Err(MatrixError::RaggedRow { row: 2, .. })));
        assert!(matches!(TritMatrix::from_values(&[[3i64]]), Err(MatrixError::InvalidValue { .. })));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(rows in 1usize..5, cols in 1usize..6, seed in any::<u64>()) {
            let total = 3u64.pow((rows * cols) as u32);
            let mat = TritMatrix::from_index(rows, cols, seed % total).unwrap();
            prop_assert_eq!(parse_matrix(&mat.to_string()).unwrap(), mat);
        }
    }
}
