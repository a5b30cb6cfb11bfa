use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),

    #[error("degenerate direction: style and source prompts embed identically")]
    DegenerateDirection,

    #[error("degenerate corner set: no invertible perspective found after {retries} retries")]
    DegenerateCorners { retries: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("singular covariance: Cholesky factorization failed even after ridge regularization")]
    SingularCovariance,

    #[error("non-finite value in loss term '{term}'")]
    NonFiniteLoss { term: String },

    #[error("optimization diverged at step {step}: loss is not finite")]
    Diverged { step: usize },

    #[error("corrupt file {path}: {reason}")]
    CorruptFile { path: PathBuf, reason: String },

    #[error("unsupported format version in {path}: found '{found}', expected '{expected}'")]
    VersionMismatch {
        path: PathBuf,
        found: String,
        expected: String,
    },

    #[error("shape mismatch for '{name}': found {found:?}, expected {expected:?}")]
    ShapeMismatch {
        name: String,
        found: Vec<usize>,
        expected: Vec<usize>,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image codec error: {0}")]
    Image(#[from] image::ImageError),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
