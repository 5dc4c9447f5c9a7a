//! Crate-wide error type and exit-code mapping.

use std::path::PathBuf;

/// All errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("column {0:?} not present in header")]
    MissingColumn(String),

    #[error("row {row}: {reason}")]
    BadRow { row: usize, reason: String },

    #[error("empty record list")]
    EmptyCorpus,

    #[error("invalid split ratios {0:?}: must be positive and sum to 1")]
    InvalidRatios([f64; 3]),

    #[error("empty vocabulary")]
    EmptyVocabulary,

    #[error("component count {k} out of range [1, {max}]")]
    ComponentCountOutOfRange { k: usize, max: usize },

    #[error("degenerate covariance")]
    DegenerateCovariance,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("training set contains a single class")]
    SingleClass,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("prediction/gold length mismatch: {predictions} vs {gold}")]
    LengthMismatch { predictions: usize, gold: usize },

    #[error("text is empty after preprocessing")]
    EmptyAfterPreprocess,

    #[error("unknown emotion label {0:?}")]
    UnknownLabel(String),

    #[error("unsupported schema version: expected {expected:?}, found {found:?}")]
    SchemaVersion { expected: String, found: String },

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Process exit code for the CLI: 1 usage, 2 data, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_) | Error::UnknownLabel(_) | Error::InvalidRatios(_) => 1,
            Error::FileNotFound(_)
            | Error::Io { .. }
            | Error::MissingColumn(_)
            | Error::BadRow { .. }
            | Error::EmptyCorpus
            | Error::EmptyVocabulary
            | Error::EmptyAfterPreprocess
            | Error::SchemaVersion { .. }
            | Error::MalformedDocument(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
