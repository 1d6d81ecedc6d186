use std::fmt;

use serde::{Deserialize, Serialize};

/// A single entry of a matrix over {-1, 0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Trit {
    Neg,
    Zero,
    Pos,
}

impl Trit {
    /// Digit order used by enumerations: -1, 0, 1.
    pub const ALL: [Trit; 3] = [Trit::Neg, Trit::Zero, Trit::Pos];

    pub fn value(self) -> i8 {
        match self {
            Trit::Neg => -1,
            Trit::Zero => 0,
            Trit::Pos => 1,
        }
    }

    pub fn from_value(v: i8) -> Option<Trit> {
        match v {
            -1 => Some(Trit::Neg),
            0 => Some(Trit::Zero),
            1 => Some(Trit::Pos),
            _ => None,
        }
    }

    /// Parses one of the tokens `-1`, `0`, `1`.
    pub fn from_token(token: &str) -> Option<Trit> {
        match token {
            "-1" => Some(Trit::Neg),
            "0" => Some(Trit::Zero),
            "1" => Some(Trit::Pos),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Trit::Zero
    }
}

impl From<Trit> for i8 {
    fn from(t: Trit) -> i8 {
        t.value()
    }
}

impl TryFrom<i8> for Trit {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        Trit::from_value(v).ok_or_else(|| format!("{v} is not in {{-1, 0, 1}}"))
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}
