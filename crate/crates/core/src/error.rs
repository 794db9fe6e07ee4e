use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("bidegree mismatch: {0}")]
    Bidegree(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
