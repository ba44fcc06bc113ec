//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("rank {rank} out of range for group of order {v}")]
    RankOutOfRange { rank: usize, v: u64 },

    #[error("{t} is not a unit modulo the group exponent {e}")]
    NotAUnit { t: i64, e: u64 },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("quotient data was built from a different group")]
    QuotientMismatch,

    #[error("P and N overlap in {0} element(s)")]
    OverlappingSets(usize),

    #[error("coefficient {coeff} at rank {rank} is outside {{-1, 0, 1}}")]
    NotASignedSet { rank: usize, coeff: i64 },

    #[error("integer overflow in group-ring arithmetic")]
    Overflow,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("group is not cyclic (autocorrelation needs a single cyclic factor)")]
    NotCyclic,

    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),

    #[error("field error: {0}")]
    Field(String),

    #[error("construction precondition failed: {0}")]
    Precondition(String),

    #[error("construction output failed verification: {0}")]
    ConstructionInvalid(String),

    #[error("search refused: {0}")]
    SearchRefused(String),

    #[error("malformed set data: {0}")]
    Format(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
