//! Error-to-exit-code mapping.

use std::fmt;

/// Exit code 0 is success; these carry the nonzero cases.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, unparsable, or invalid configuration (exit 2).
    Config(String),
    /// Numerical failure during simulation (exit 3).
    Numeric(String),
    /// Some sweep runs failed; results for the rest were written (exit 4).
    PartialSweep(String),
    /// Filesystem trouble writing outputs (exit 3).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
            CliError::PartialSweep(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
            CliError::PartialSweep(m) => write!(f, "sweep finished with failures: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<srmc_core::Error> for CliError {
    fn from(e: srmc_core::Error) -> Self {
        match e {
            srmc_core::Error::NumericalBlowup { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
