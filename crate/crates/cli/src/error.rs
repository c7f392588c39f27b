use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidArguments(String),

    #[error("{0}")]
    Overflow(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::InvalidArguments(_) | CliError::Io(_) => 2,
            CliError::Overflow(_) => 3,
            CliError::Cache(_) => 4,
        }
    }

    pub fn to_exit_code(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

impl From<multiport::Error> for CliError {
    fn from(err: multiport::Error) -> Self {
        match err {
            multiport::Error::Overflow(_) => CliError::Overflow(err.to_string()),
            multiport::Error::InvalidInput(_) | multiport::Error::ResourceLimit { .. } => {
                CliError::InvalidArguments(err.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
