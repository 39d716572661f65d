use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group {name} of order {order} exceeds the bound {bound}")]
    BoundExceeded { name: String, order: usize, bound: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("malformed group description: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
