use thiserror::Error;

/// Errors surfaced by matroid construction, search, and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("width mismatch: got {got}, expected {expected}")]
    WidthMismatch { got: usize, expected: usize },

    #[error("unknown element id {0}")]
    UnknownElement(u32),

    #[error("operation would leave an empty ground set")]
    EmptyGroundSet,

    #[error("{family} requires rank >= {min}, got {rank}")]
    RankRange { family: &'static str, rank: usize, min: usize },

    #[error("unknown matroid name {0:?}")]
    UnknownName(String),

    #[error("unsupported size: {elements} elements exceeds the exhaustive bound {bound}")]
    UnsupportedSize { elements: usize, bound: usize },

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("canonical key unsupported: side rank {0} exceeds {1}")]
    KeyRank(usize, usize),

    #[error("orbit table target must be simple of rank 5, got rank {0}")]
    OrbitTargetRank(usize),

    #[error("orbit cache rejected: {0}")]
    CacheMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
