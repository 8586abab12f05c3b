use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A brute-force or materialisation budget would be exceeded.
    #[error("size error: {what} needs {needed}, limit is {limit}")]
    Size {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// A quadrature or truncation did not reach its tolerance.
    #[error("precision error: {0}")]
    Precision(String),

    /// The rejection sampler exhausted its draw budget.
    #[error("rejection budget of {0} draws exhausted")]
    RetryBudget(u64),

    /// One or more parameter constraints failed.
    #[error("invalid parameters: {}", .0.join("; "))]
    Invalid(Vec<String>),

    /// A text input (parameter file, grid CSV) could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
