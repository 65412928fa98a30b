use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: u64, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] pythagorean_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Core(_) => 2,
        }
    }

    pub(crate) fn parse(path: &str, line: u64, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }
}
