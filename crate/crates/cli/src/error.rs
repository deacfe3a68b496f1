use thiserror::Error;

/// Failure of a CLI run, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<twopulse_core::Error> for CliError {
    fn from(e: twopulse_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
