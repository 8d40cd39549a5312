//! Verdict records shared by every checker.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Interval enclosures still overlapped after the refinement budget ran out.
    Undecided,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Outcome::Pass
    }

    /// Combines two outcomes: any failure wins, then any undecided.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Undecided, _) | (_, Outcome::Undecided) => Outcome::Undecided,
            _ => Outcome::Pass,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Undecided => "undecided",
        })
    }
}

/// One executed check: a stable identifier, a short label naming the identity
/// or law being checked, the outcome, and free-form detail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub label: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        label: impl Into<String>,
        outcome: Outcome,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            id: id.into(),
            label: label.into(),
            outcome,
            detail: detail.into(),
        }
    }

    pub fn from_bool(
        id: impl Into<String>,
        label: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self::new(id, label, Outcome::from_bool(ok), detail)
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_pass()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({}): {}", self.outcome, self.id, self.label, self.detail)
    }
}
