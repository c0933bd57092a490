//! Error types shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The lower radius bound is only proved for eps below the cutoff.
    #[error("eps = {eps} is outside the validity domain (0, {cutoff}) of the lower bound")]
    OutsideValidity { eps: f64, cutoff: f64 },

    /// A user-supplied evaluator violated a declared invariant.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// An iteration did not terminate within its budget.
    #[error("iteration did not terminate within {max_n} steps")]
    BudgetExceeded { max_n: usize },

    /// A root-finder could not bracket or converge.
    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// Malformed input (JSON, flag syntax, model spec).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
