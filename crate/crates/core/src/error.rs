use thiserror::Error;

use crate::polyalg::groebner::PartialBasis;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Unsupported or malformed root-system configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Polynomial text that could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A Groebner computation ran out of its pair or coefficient budget.
    #[error("groebner budget exceeded after {} pairs ({})", .0.pairs_processed, .0.reason)]
    BudgetExceeded(Box<PartialBasis>),

    /// A self-check failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
