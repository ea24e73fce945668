use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("dataset `{dataset}`")]
    Dataset {
        dataset: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("thread count must be at least 1")]
    ZeroThreads,

    #[error("no 1-thread baseline for dataset `{dataset}`, layout {layout}, variant {variant}")]
    MissingBaseline {
        dataset: String,
        layout: String,
        variant: String,
    },

    #[error("invalid word {0:?}: words are non-empty runs of ASCII letters and digits")]
    InvalidWord(String),

    #[error("unknown {kind} `{value}`")]
    UnknownName { kind: &'static str, value: String },

    #[error("malformed report: {0}")]
    Report(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
