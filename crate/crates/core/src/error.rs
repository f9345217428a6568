use std::io;

use thiserror::Error;

/// Errors produced by the optimizers, the benchmark suite, the evaluation
/// harness and the clustering pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown algorithm `{name}` (valid: {valid})")]
    UnknownAlgorithm { name: String, valid: String },

    #[error("unknown benchmark `{name}` (valid: {valid})")]
    UnknownBenchmark { name: String, valid: String },

    #[error("sample must not be empty")]
    EmptySample,

    #[error("dataset has no labels")]
    MissingLabels,

    #[error("line {line}: {message}")]
    MalformedCsv { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
