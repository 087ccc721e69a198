//! Library surface of the command-line tool, shared with the test suites.

pub mod commands;
pub mod figures;
pub mod input;
pub mod output;
pub mod svg;

use thiserror::Error;

/// Errors carrying the process exit code contract: invalid input exits 2,
/// genericity violations exit 3, everything else exits 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NonGeneric(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
    #[error("check failed\n{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::NonGeneric(_) => 3,
            CliError::Io(_) | CliError::Internal(_) | CliError::CheckFailed(_) => 1,
        }
    }
}
