//! Verification reports.
//!
//! Every check produces [`CheckItem`]s. Items flagged `observational` record a
//! comparison whose outcome is published but never fails a run.

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "asmdet-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub observational: bool,
    /// Serialized difference (or offending value) when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckItem {
    pub fn new(identity: impl Into<String>, n: Option<i64>, k: Option<i64>, pass: bool) -> Self {
        CheckItem { identity: identity.into(), n, k, pass, observational: false, witness: None, detail: None }
    }

    pub fn nk(identity: impl Into<String>, n: usize, k: i64, pass: bool) -> Self {
        CheckItem::new(identity, Some(n as i64), Some(k), pass)
    }

    pub fn at_n(identity: impl Into<String>, n: usize, pass: bool) -> Self {
        CheckItem::new(identity, Some(n as i64), None, pass)
    }

    pub fn witness(mut self, w: impl ToString) -> Self {
        if !self.pass {
            self.witness = Some(w.to_string());
        }
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn observational(mut self) -> Self {
        self.observational = true;
        self
    }

    pub fn is_hard_failure(&self) -> bool {
        !self.pass && !self.observational
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub items: Vec<CheckItem>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, items: Vec<CheckItem>) -> Self {
        SuiteReport { suite: suite.into(), items }
    }

    pub fn hard_failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.is_hard_failure())
    }

    pub fn passed(&self) -> bool {
        self.hard_failures().next().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub pass: bool,
    pub hard_failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<CheckItem>,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn assemble(mut suites: Vec<SuiteReport>) -> Self {
        suites.sort_by(|a, b| a.suite.cmp(&b.suite));
        for s in &mut suites {
            // stable: items sharing (n, k) keep their generation order
            s.items.sort_by_key(|i| (i.n, i.k));
        }
        let hard_failures = suites.iter().map(|s| s.hard_failures().count()).sum();
        let first_failure = suites.iter().flat_map(|s| s.hard_failures()).next().cloned();
        Report { schema: REPORT_SCHEMA.to_string(), pass: hard_failures == 0, hard_failures, first_failure, suites }
    }
}

/// Compares two values, recording the difference as witness on mismatch.
pub(crate) fn compare<T: PartialEq + std::fmt::Display>(
    identity: &str,
    n: Option<i64>,
    k: Option<i64>,
    lhs: &T,
    rhs: &T,
) -> CheckItem {
    let pass = lhs == rhs;
    CheckItem::new(identity, n, k, pass).witness(format!("lhs = {lhs}; rhs = {rhs}"))
}
