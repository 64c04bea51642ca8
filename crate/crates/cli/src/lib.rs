//! Parsing, rendering and command implementations behind the `mbx` binary.

pub mod commands;
pub mod parse;
pub mod record;
pub mod render;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::VerifyFailed(_) => 4,
        }
    }
}

impl From<mbx_core::Error> for CliError {
    fn from(e: mbx_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Domain(format!("csv output: {e}"))
    }
}
