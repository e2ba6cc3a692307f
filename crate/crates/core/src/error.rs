use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed document: {0}")]
    Schema(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range for {len} nodes")]
    Index { index: usize, len: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no hardware configuration fits the budget of {budget} DSPs (smallest design needs {minimum})")]
    Infeasible { budget: u64, minimum: u64 },

    #[error("arithmetic intensity is undefined: no bytes are moved")]
    UndefinedIntensity,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dims(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            found,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line front end. Each error class
    /// gets its own code so scripts can tell them apart.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Schema(_) | Error::DimensionMismatch { .. } | Error::Index { .. } => 3,
            Error::NotPowerOfTwo(_) | Error::Config(_) => 4,
            Error::Infeasible { .. } => 5,
            Error::Internal(_) | Error::UndefinedIntensity => 6,
            Error::Io { .. } => 7,
        }
    }
}
