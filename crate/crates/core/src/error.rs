use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown problem '{name}' (valid: {valid})")]
    UnknownProblem { name: String, valid: String },

    #[error("unknown algorithm '{name}' (valid: {valid})")]
    UnknownAlgorithm { name: String, valid: String },

    #[error("evaluation budget {budget} cannot initialize a colony of {needed} sources")]
    BudgetTooSmall { budget: u64, needed: u64 },

    #[error("neighbour moves need at least two food sources (have {0})")]
    PartnerSelection(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no records to summarize")]
    EmptyRecords,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
