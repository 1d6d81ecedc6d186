use serde_json::{json, Value};

use crate::rle::RleRow;

/// Outcome of a semi-transitivity decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    SemiTransitive,
    NotSemiTransitive(Witness),
}

/// Evidence that a graph is not semi-transitive.
///
/// Graph witnesses use vertex labels; row witnesses describe a row of the
/// (normalized) split-graph matrix and use 1-based column positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Directed cycle `v_1 -> v_2 -> ... -> v_k -> v_1`.
    Cycle { vertices: Vec<usize> },
    /// Path `u_1 -> ... -> u_t` with the edge `u_1 -> u_t` present and the
    /// chord `missing` absent.
    Shortcut { path: Vec<usize>, missing: (usize, usize) },
    /// A row without a 0 holding `-1` at `positions.0` and `1` at
    /// `positions.1 > positions.0`; these close a directed 3-cycle.
    CyclicRow { row: RleRow, positions: (usize, usize) },
    /// A row that matches none of the admissible forms.
    InvalidRow { row: RleRow },
    /// `row` is `1^a 0^b (-1)^c` with `a, b, c > 0` and the distinct row
    /// `other` has equal nonzero entries at `positions = (a, a+b+1)`.
    PairViolation { row: RleRow, other: RleRow, positions: (usize, usize) },
}

impl Verdict {
    pub fn is_semi_transitive(&self) -> bool {
        matches!(self, Verdict::SemiTransitive)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::SemiTransitive => None,
            Verdict::NotSemiTransitive(w) => Some(w),
        }
    }

    pub fn reason(&self) -> String {
        match self {
            Verdict::SemiTransitive => "acyclic and no shortcut".to_string(),
            Verdict::NotSemiTransitive(w) => w.reason(),
        }
    }

    /// `{"verdict": ..., "reason": ..., "witness": ...}`
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.is_semi_transitive() { "semi-transitive" } else { "not-semi-transitive" },
            "reason": self.reason(),
            "witness": self.witness().map_or(Value::Null, Witness::to_json),
        })
    }
}

fn row_json(row: &RleRow) -> Value {
    json!({ "rle": row.to_string(), "length": row.len() })
}

impl Witness {
    pub fn reason(&self) -> String {
        match self {
            Witness::Cycle { .. } => "directed cycle".to_string(),
            Witness::Shortcut { missing, .. } => format!("shortcut: edge {} -> {} missing", missing.0, missing.1),
            Witness::CyclicRow { positions, .. } => {
                format!("row without 0 has 1 at position {} right of -1 at position {}", positions.1, positions.0)
            }
            Witness::InvalidRow { .. } => "row is not of the form 0^r1^s0^t, 0^r(-1)^s0^t or 1^r0^s(-1)^t".to_string(),
            Witness::PairViolation { positions, .. } => {
                format!("another row has equal nonzero entries at positions {} and {}", positions.0, positions.1)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Witness::Cycle { vertices } => json!({ "kind": "cycle", "vertices": vertices }),
            Witness::Shortcut { path, missing } => {
                json!({ "kind": "shortcut", "path": path, "missing_edge": [missing.0, missing.1] })
            }
            Witness::CyclicRow { row, positions } => {
                json!({ "kind": "cyclic-row", "row": row_json(row), "positions": [positions.0, positions.1] })
            }
            Witness::InvalidRow { row } => json!({ "kind": "invalid-row", "row": row_json(row) }),
            Witness::PairViolation { row, other, positions } => json!({
                "kind": "pair-violation",
                "row": row_json(row),
                "other": row_json(other),
                "positions": [positions.0, positions.1],
            }),
        }
    }
}
