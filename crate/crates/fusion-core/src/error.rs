use burnside_core::BisetError;
use group_core::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("invalid input: {0}")]
    Input(String),
    /// A computed object failed one of the identities it must satisfy.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Biset(#[from] BisetError),
}
