//! Run-length encoded trit strings.
//!
//! Rows of `M^k(A,B,C)` have length `n^k` but usually only a handful of
//! runs, so the morphism engine and the split checker work on [`RleRow`]
//! instead of dense vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::trit::Trit;

/// A trit string stored as maximal runs.
///
/// Adjacent runs always carry distinct trits and every run has length at
/// least one, so two rows are equal iff their contents are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RleRow {
    runs: Vec<(Trit, usize)>,
    len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RleParseError {
    #[error("empty pattern")]
    Empty,
    #[error("malformed run {0:?}, expected \"v:len\"")]
    MalformedRun(String),
    #[error("invalid trit {0:?} in run")]
    InvalidTrit(String),
    #[error("invalid run length {0:?}")]
    InvalidLength(String),
}

impl RleRow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(t: Trit, len: usize) -> Self {
        let mut row = Self::new();
        row.push_run(t, len);
        row
    }

    pub fn from_dense(cells: &[Trit]) -> Self {
        let mut row = Self::new();
        for &t in cells {
            row.push_run(t, 1);
        }
        row
    }

    /// Builds a row from arbitrary runs, merging equal neighbours and
    /// dropping empty runs.
    pub fn from_runs<I: IntoIterator<Item = (Trit, usize)>>(runs: I) -> Self {
        let mut row = Self::new();
        for (t, len) in runs {
            row.push_run(t, len);
        }
        row
    }

    pub fn push_run(&mut self, t: Trit, len: usize) {
        if len == 0 {
            return;
        }
        self.len += len;
        match self.runs.last_mut() {
            Some((last, count)) if *last == t => *count += len,
            _ => self.runs.push((t, len)),
        }
    }

    pub fn extend_from(&mut self, other: &RleRow) {
        for &(t, len) in &other.runs {
            self.push_run(t, len);
        }
    }

    /// Appends `times` copies of `motif`.
    pub fn extend_repeated(&mut self, motif: &RleRow, times: usize) {
        match motif.runs.as_slice() {
            [] => {}
            [(t, len)] => self.push_run(*t, len * times),
            _ => {
                for _ in 0..times {
                    self.extend_from(motif);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn runs(&self) -> &[(Trit, usize)] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.runs.len() <= 1
    }

    pub fn contains(&self, t: Trit) -> bool {
        self.runs.iter().any(|&(v, _)| v == t)
    }

    pub fn count(&self, t: Trit) -> usize {
        self.runs.iter().filter(|&&(v, _)| v == t).map(|&(_, l)| l).sum()
    }

    /// Entry at 1-based `pos`.
    pub fn get(&self, pos: usize) -> Option<Trit> {
        if pos == 0 || pos > self.len {
            return None;
        }
        let mut end = 0;
        for &(t, len) in &self.runs {
            end += len;
            if pos <= end {
                return Some(t);
            }
        }
        None
    }

    /// Returns a copy with a single `0` inserted after the first `after`
    /// entries (`after == 0` prepends, `after == len` appends).
    pub fn with_zero_inserted(&self, after: usize) -> RleRow {
        assert!(after <= self.len, "insertion point {after} beyond row length {}", self.len);
        let mut out = RleRow::new();
        let mut remaining = after;
        let mut inserted = false;
        for &(t, len) in &self.runs {
            if !inserted && remaining < len {
                out.push_run(t, remaining);
                out.push_run(Trit::Zero, 1);
                out.push_run(t, len - remaining);
                inserted = true;
            } else {
                out.push_run(t, len);
                if !inserted {
                    remaining -= len;
                }
            }
        }
        if !inserted {
            out.push_run(Trit::Zero, 1);
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Trit> {
        let mut cells = Vec::with_capacity(self.len);
        for &(t, len) in &self.runs {
            cells.extend(std::iter::repeat(t).take(len));
        }
        cells
    }

    /// Space-separated tokens, the same layout as one line of the matrix
    /// text format.
    pub fn to_tokens(&self) -> String {
        let mut out = String::new();
        for t in self.to_dense() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&t.to_string());
        }
        out
    }
}

/// Pattern dump format: runs `v:len` joined by commas, e.g. `0:1,-1:3`.
impl fmt::Display for RleRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, len)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}:{len}")?;
        }
        Ok(())
    }
}

impl FromStr for RleRow {
    type Err = RleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RleParseError::Empty);
        }
        let mut row = RleRow::new();
        for part in s.split(',') {
            let part = part.trim();
            let (v, len) = part
                .split_once(':')
                .ok_or_else(|| RleParseError::MalformedRun(part.to_string()))?;
            let t = Trit::from_token(v.trim()).ok_or_else(|| RleParseError::InvalidTrit(v.to_string()))?;
            let len: usize = len
                .trim()
                .parse()
                .ok()
                .filter(|&l| l > 0)
                .ok_or_else(|| RleParseError::InvalidLength(len.to_string()))?;
            row.push_run(t, len);
        }
        Ok(row)
    }
}

impl Serialize for RleRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
