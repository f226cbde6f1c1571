use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite value at position {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("list of {n} items is too large to enumerate (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("nDCG undefined for every query (all labels zero)")]
    UndefinedMetric,

    #[error("non-finite loss {loss} at epoch {epoch}, query {query_id}")]
    NonFiniteLoss { epoch: usize, query_id: String, loss: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    StdIo(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code for the command-line tool: 2 for data problems,
    /// 3 for numerical failure, 1 for anything caused by the arguments.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonFiniteLoss { .. } => 3,
            Error::InvalidArgument(_) => 1,
            Error::File { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}
