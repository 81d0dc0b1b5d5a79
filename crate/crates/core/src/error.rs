use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation exceeded: {what} reaches degree {degree}, window is [0, {max}]")]
    TruncationExceeded {
        what: String,
        degree: i64,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subspace is not contained in the ambient space")]
    Containment,

    #[error("characteristic polynomial does not split over Q; unresolved factor {factor}")]
    IrrationalSpectrum { factor: String },

    #[error("invalid module specification: {0}")]
    InvalidSpec(String),

    #[error("module factors through the lower level Zhu algebra; induction at level {level} is not defined (use regrading)")]
    FactorsThrough { level: usize },

    #[error("degree-{level} piece has dimension {got}, expected dim U = {expected}; raise the relation cutoff")]
    DegreeMismatch {
        level: usize,
        expected: usize,
        got: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
