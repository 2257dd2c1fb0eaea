use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,

    #[error("operation requires a squarefree ideal (polarize first)")]
    NotSquarefree,

    #[error("guard exceeded: {what} is {actual}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("operation requires a non-void simplicial complex")]
    VoidComplex,

    #[error("ground set of {0} elements exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    #[error("partitions are not compatible")]
    IncompatiblePartitions,

    #[error("graph has no 2-partition with a nonempty crossing edge set")]
    NoCuts,

    #[error("filtration is not nested at step {0}")]
    NotNested(usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
