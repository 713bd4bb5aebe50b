use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Exit status for a run whose checks did not all pass.
pub const EXIT_VERIFICATION: i32 = 1;
/// Exit status for bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for a parameter beyond a numerical cap.
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Core(#[from] se2_core::Error),
}

impl CliError {
    pub fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Self::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(se2_core::Error::ParameterCap { .. }) => EXIT_CAP,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
