use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("no case in the log has the model's activities")]
    NothingAlignable,
}

impl CliError {
    pub fn data(origin: impl AsRef<str>, message: impl std::fmt::Display) -> Self {
        Self::Data(format!("{}: {message}", origin.as_ref()))
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.display().to_string(), source }
    }

    /// 1 for usage errors, 2 for unreadable or malformed input, 3 when no case
    /// could be aligned.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Data(_) | Self::Io { .. } => 2,
            Self::NothingAlignable => 3,
        }
    }
}
