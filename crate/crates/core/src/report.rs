//! Pass/fail records produced by the verification routines.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Records an equality, with both sides in the detail when it fails.
    pub fn expect_eq<T: PartialEq + std::fmt::Display>(&mut self, name: impl Into<String>, lhs: &T, rhs: &T) {
        let ok = lhs == rhs;
        let detail = if ok { String::new() } else { format!("{lhs} != {rhs}") };
        self.record(name, ok, detail);
    }

    pub fn expect_zero(&mut self, name: impl Into<String>, x: &crate::algebra::Element) {
        let detail = if x.is_zero() { String::new() } else { x.to_text() };
        self.record(name, x.is_zero(), detail);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let bad = self.failures().count();
        format!("{}: {} checks, {} failed", self.title, self.checks.len(), bad)
    }
}
