use num_bigint::BigInt;
use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("arity mismatch: polynomial has arity {expected}, point has {got} coordinates")]
    ArityMismatch { expected: usize, got: usize },

    #[error("the curves share a common component (positive-dimensional intersection)")]
    PositiveDimensional,

    #[error("prime {prime} outside S divides three of the form values; enlarge S")]
    CoprimalityViolation { prime: BigInt },

    #[error("general position fails: {0}")]
    GeneralPosition(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
