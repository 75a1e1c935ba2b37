use std::path::PathBuf;

/// Errors produced by kernel construction, filtering, image I/O and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("missing interpolation condition: {0}")]
    MissingCondition(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("oracle system is singular: {0}")]
    Singular(String),
    #[error("derivative order {order} is not supported by a filter of length {length}")]
    Order { order: usize, length: usize },
    #[error("size error: {0}")]
    Size(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unstable recursive scheme: {0}")]
    Scheme(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("malformed image file {path}: {reason}")]
    Format { path: PathBuf, reason: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("image codec error on {path}: {source}")]
    Codec {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
