use thiserror::Error;

/// Errors raised by contract checks across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dimension must be at least {min}, got {actual}")]
    DimensionTooSmall { min: usize, actual: usize },

    #[error("non-finite value {0} rejected")]
    NonFinite(f64),

    #[error("invalid bounds in dimension {dim}: lo={lo} must be < hi={hi}")]
    InvalidBounds { dim: usize, lo: f64, hi: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("unknown name `{name}`; expected one of: {valid}")]
    UnknownName { name: String, valid: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
