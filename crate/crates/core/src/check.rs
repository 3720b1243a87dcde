//! Outcome of evaluating one property on one lattice.

use crate::lattice::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Holds,
    /// The property fails at the given element assignment.
    Violated(Vec<ElementId>),
    /// The hypothesis was never met, so nothing was confirmed.
    Unmet,
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Holds => "holds",
            CheckStatus::Violated(_) => "violated",
            CheckStatus::Unmet => "hypothesis-unmet",
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, CheckStatus::Violated(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check: String,
    pub lattice: String,
    pub status: CheckStatus,
}
