use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid double ramification data: {0}")]
    DrData(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
