use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrError {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    /// The request is well formed but its affine structure is not realized here.
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("{0} is not perfect")]
    NotPerfect(String),
    #[error("level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: i64, got: i64 },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("not a highest-weight element: {0}")]
    NotHighestWeight(String),
    #[error("no operator path from {from} to {to}")]
    NoPath { from: String, to: String },
    #[error("malformed tableau: {0}")]
    Malformed(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, KrError>;
