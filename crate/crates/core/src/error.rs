use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("not elementary abelian: {0}")]
    NotElementaryAbelian(String),
    #[error("invalid dg structure: {0}")]
    InvalidDg(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
