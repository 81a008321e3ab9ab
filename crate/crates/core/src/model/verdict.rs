use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// The concrete counterexample behind a failed check: the equality that was
/// expected to hold, in words, and the two exact values that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    pub fn holds() -> Self {
        PropertyVerdict {
            holds: true,
            witness: None,
        }
    }

    /// A failed verdict. Panics if `lhs == rhs`, since such a witness would
    /// not witness anything.
    pub fn fails(condition: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        assert_ne!(lhs, rhs, "witness values must differ");
        PropertyVerdict {
            holds: false,
            witness: Some(Witness {
                condition: condition.into(),
                lhs,
                rhs,
            }),
        }
    }

    pub fn witness_values(&self) -> Option<(&Rational, &Rational)> {
        self.witness.as_ref().map(|w| (&w.lhs, &w.rhs))
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "holds"),
            Some(w) => write!(f, "fails: {} ({} vs {})", w.condition, w.lhs, w.rhs),
        }
    }
}
