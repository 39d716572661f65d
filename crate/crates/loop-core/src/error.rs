use burnside_core::BisetError;
use fusion_core::FusionError;
use group_core::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoopError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Biset(#[from] BisetError),
}

pub type Result<T> = std::result::Result<T, LoopError>;
