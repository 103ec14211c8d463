use std::path::PathBuf;

use thiserror::Error;

use crate::dataset::FormatError;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is not unit norm (norm = {norm})")]
    NotUnitNorm { norm: f64 },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("class has a single sample, no neighbour available")]
    NoNeighbor,

    #[error("row {row} has zero norm")]
    ZeroVector { row: usize },

    #[error("class {class} has {available} samples, {required} required")]
    InsufficientSamples {
        class: u32,
        available: usize,
        required: usize,
    },

    #[error("label {label} out of range for {num_classes} classes")]
    LabelOutOfRange { label: u32, num_classes: usize },

    #[error("rejection sampler exceeded {0} iterations")]
    SamplerStalled(usize),

    #[error("training failed: {0}")]
    Training(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
