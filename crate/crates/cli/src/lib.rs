//! Command implementations behind the `maxint` binary, and the verification
//! suites shared by `maxint verify` and the acceptance tests.

pub mod commands;
pub mod verify;

use std::fmt;

/// Failure classes, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input (exit 2).
    Usage(anyhow::Error),
    /// A verification suite reported failures (exit 1).
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e:#}"),
            CliError::Verification(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Usage(e)
    }
}

impl From<maxint_core::Error> for CliError {
    fn from(e: maxint_core::Error) -> Self {
        CliError::Usage(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.into())
    }
}

/// Reads `MAXINT_THREADS`; `None` leaves rayon's default in place.
pub fn thread_limit() -> Result<Option<usize>, CliError> {
    match std::env::var("MAXINT_THREADS") {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(anyhow::anyhow!(
                "MAXINT_THREADS must be a positive integer, got `{raw}`"
            ))),
        },
    }
}
