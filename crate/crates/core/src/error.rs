use std::io;

use thiserror::Error;

use crate::linalg::MatrixKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("malformed graph6 string: {0}")]
    Format(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no census available for order {order}, kind {kind}")]
    MissingCensus { order: usize, kind: MatrixKind },
    #[error("theorem hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("census file version mismatch: {0}")]
    Version(String),
    #[error("census file checksum mismatch")]
    Checksum,
    #[error("corrupt census file: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
