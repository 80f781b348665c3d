use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("group kind mismatch: {0}")]
    KindMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("duplicate group elements in {0}")]
    DuplicateElements(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
