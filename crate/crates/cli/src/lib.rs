//! Scenario harness: runs the theorem-level checks over configured groups
//! and actions, and aggregates deterministic reports.

pub mod checks;
pub mod report;
pub mod scenario;

pub use report::{CheckResult, Report, Status};
pub use scenario::{run_scenario, run_suite, ScenarioSpec, SuiteConfig};
