//! Acceptance criteria for `fracspec-core` and the seeded workloads they
//! share with the experiment runner.

pub mod acceptance;
pub mod workloads;

pub use acceptance::{run_criterion, select, status_line, verify, CriterionResult, Summary, VerifyOptions, CRITERIA};
