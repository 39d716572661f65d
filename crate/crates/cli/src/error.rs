use burnside_core::BisetError;
use fusion_core::FusionError;
use group_core::GroupError;
use loop_core::LoopError;
use p_completion::CompletionError;
use thiserror::Error;

/// Errors grouped by the exit status they map to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("resource bound: {0}")]
    Bound(String),
    #[error("verification failed: {0}")]
    Failed(String),
    /// Standard output was closed by the reader.
    #[error("output closed")]
    Closed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Closed => 0,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> CliError {
        match e {
            GroupError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<BisetError> for CliError {
    fn from(e: BisetError) -> CliError {
        match e {
            BisetError::Group(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> CliError {
        match e {
            FusionError::Group(g) => g.into(),
            FusionError::Biset(b) => b.into(),
            FusionError::Consistency(_) => CliError::Failed(e.to_string()),
            FusionError::Input(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LoopError> for CliError {
    fn from(e: LoopError) -> CliError {
        match e {
            LoopError::Group(g) => g.into(),
            LoopError::Biset(b) => b.into(),
            LoopError::Fusion(f) => f.into(),
            LoopError::Consistency(_) => CliError::Failed(e.to_string()),
            LoopError::Input(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CompletionError> for CliError {
    fn from(e: CompletionError) -> CliError {
        match e {
            CompletionError::Group(g) => g.into(),
            CompletionError::Biset(b) => b.into(),
            CompletionError::Fusion(f) => f.into(),
            CompletionError::Loop(l) => l.into(),
            CompletionError::Consistency(_) | CompletionError::NotInvertible(_) => CliError::Failed(e.to_string()),
            CompletionError::Input(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
