use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("data error: {0}")]
    Data(String),

    #[error("no rows")]
    NoRows,

    #[error("row index {index} out of range for dataset with {n} rows")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("insufficient data: simplicial depth needs n >= d + 1 (n = {n}, d = {d})")]
    InsufficientData { n: usize, d: usize },

    #[error("prior density is zero at every grid point")]
    DegenerateSupport,

    #[error("unsupported sampler: {0}")]
    UnsupportedSampler(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("accuracy unreachable: discrepancy alpha(t) = {0} must be positive")]
    UnreachableAccuracy(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Config(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
