//! Deterministic check reports.  Timing never enters the serialized payload
//! so that identical seeds give byte-identical output.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// data sufficient to replay a failure in isolation
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            witnesses,
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: String,
    pub group_order: u64,
    pub acting_order: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.reports {
            for c in &r.checks {
                out.push(format!(
                    "{:7} {} :: {} - {}",
                    format!("{:?}", c.status).to_uppercase(),
                    r.scenario,
                    c.name,
                    c.detail
                ));
            }
        }
        out
    }
}
