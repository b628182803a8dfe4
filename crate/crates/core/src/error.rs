use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of an operation (bad id, wrong host, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value outside its allowed range.
    #[error("config error: {0}")]
    Config(String),

    /// A scenario or model that violates one or more invariants.
    #[error("validation failed:\n  - {}", .0.join("\n  - "))]
    Validation(Vec<String>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("oracle budget exceeded: {needed} evaluations needed, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
