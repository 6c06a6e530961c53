use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive definite (pivot {pivot:e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("matrix is singular (zero pivot at column {0})")]
    Singular(usize),

    #[error("Lemma requires non-negative matrix (entry {value:e} at ({row}, {col}))")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("alpha too small for this iterate: {0}")]
    AlphaTooSmall(Box<Error>),

    #[error("SMART requires positive data (b[{index}] = {value:e})")]
    NonPositiveData { index: usize, value: f64 },

    #[error("row {0} of the matrix is zero")]
    ZeroRow(usize),

    #[error("column {0} of the matrix is zero")]
    ZeroColumn(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
