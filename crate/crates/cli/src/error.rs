use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("numerical precondition failed: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Usage(_) => ExitCode::from(2),
            Self::Numerical(_) => ExitCode::from(3),
            Self::Io { .. } => ExitCode::from(1),
        }
    }
}

impl From<spinweyl::Error> for CliError {
    fn from(e: spinweyl::Error) -> Self {
        match e {
            spinweyl::Error::InsufficientGrid { .. } => Self::Numerical(e.to_string()),
            other => Self::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
