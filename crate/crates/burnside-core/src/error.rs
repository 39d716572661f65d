use group_core::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BisetError {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("coefficient {value} is not {p}-local")]
    NotPLocal { value: String, p: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
