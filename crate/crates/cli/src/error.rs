//! CLI error type carrying the process exit code.
//!
//! Exit convention: 0 success, 1 usage (bad flags, grids, or config),
//! 2 data/domain (unreadable or malformed input, math-level failures).

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: invalid flag values, grids, or configuration.
    Usage(String),
    /// Bad data or a domain failure while executing a valid invocation.
    Data(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl From<semihard_core::Error> for CliError {
    fn from(err: semihard_core::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
