//! Pass/fail records for identity checks.

use serde::{Deserialize, Serialize};

use crate::arith::HMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid_rows: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            valid_rows: None,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_rows(mut self, rows: impl Into<String>) -> Self {
        self.valid_rows = Some(rows.into());
        self
    }

    /// Exact matrix equality, recording the first differing entry.
    pub fn matrices(name: impl Into<String>, lhs: &HMatrix, rhs: &HMatrix) -> Self {
        Self::matrices_on_rows(name, lhs, rhs, 0..lhs.dim())
    }

    pub fn matrices_on_rows(
        name: impl Into<String>,
        lhs: &HMatrix,
        rhs: &HMatrix,
        rows: impl IntoIterator<Item = usize>,
    ) -> Self {
        match lhs.first_difference_in_rows(rhs, rows) {
            None => Check::new(name, true),
            Some((r, c)) if lhs.dim() == rhs.dim() => Check::new(name, false).with_detail(format!(
                "entry ({r},{c}): {} != {}",
                lhs.get(r, c),
                rhs.get(r, c)
            )),
            Some(_) => Check::new(name, false).with_detail("dimension mismatch"),
        }
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
