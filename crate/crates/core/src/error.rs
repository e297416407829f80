use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("syntax error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("not a monomial: {0}")]
    NotMonomial(String),
    #[error("ring is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(usize),
    #[error("outside the decidable classes: {0}")]
    Undecidable(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
