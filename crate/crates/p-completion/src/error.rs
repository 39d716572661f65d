use burnside_core::BisetError;
use fusion_core::FusionError;
use group_core::GroupError;
use loop_core::LoopError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompletionError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not invertible in the fusion algebra of {0}")]
    NotInvertible(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

pub type Result<T> = std::result::Result<T, CompletionError>;
