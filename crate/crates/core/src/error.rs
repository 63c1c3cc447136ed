use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet is empty but the pattern has {n} symbols")]
    DegenerateAlphabet { n: usize },

    #[error("symbol {symbol} is not a member of the declared alphabet")]
    SymbolOutsideAlphabet { symbol: String },

    #[error("declared alphabet size {declared} is smaller than the {observed} distinct symbols observed")]
    AlphabetTooSmall { declared: usize, observed: usize },

    #[error("operation is undefined for the empty pattern")]
    EmptyPattern,

    #[error("estimator list is empty")]
    NoEstimators,

    #[error("unknown estimator `{0}`")]
    UnknownEstimator(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("compression backend failed: {0}")]
    CompressionBackend(#[source] std::io::Error),

    #[error("symbol {symbol} cannot be serialized in {mode} mode")]
    Unserializable { symbol: String, mode: &'static str },

    #[error("calibration {calibration} does not match pattern (n={n}, k={k}, mode={mode}, compressor={compressor})")]
    CalibrationMismatch {
        calibration: String,
        n: usize,
        k: usize,
        mode: &'static str,
        compressor: String,
    },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("transition matrix row {row} sums to {sum}, expected 1")]
    InvalidTransitionRow { row: usize, sum: f64 },

    #[error("input is not valid UTF-8: {0}")]
    InvalidUtf8(#[from] std::string::FromUtf8Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("calibration cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
