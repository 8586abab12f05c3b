//! Configuration-driven experiment runner built on `fracspec-core`.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

pub use config::Config;
pub use error::CliError;
pub use experiments::{run, RunOptions, EXPERIMENTS};
pub use report::ReportRecord;
