use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid window at position {position}: {reason}")]
    InvalidWindow { position: usize, reason: String },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {rank} outside supported range 1..={max}")]
    RankRange { rank: usize, max: usize },

    #[error("parse error at byte {at}: {reason}")]
    Parse { at: usize, reason: String },

    #[error("monomial dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: u8, got: u8 },

    #[error("not a polynomial in q; offending monomials: {}", .0.join(", "))]
    NotAQPolynomial(Vec<String>),

    #[error("invalid order weight: {0}")]
    InvalidWeight(String),

    #[error("coefficient does not fit in a JSON integer: {0}")]
    CoefficientRange(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid cell partition: {0}")]
    InvalidPartition(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("character identification failed: {0}")]
    Identification(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
