use std::fmt;

/// Failure classes with their process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed or out-of-range input; exit code 2.
    Input(String),
    /// A requested computation is larger than the configured cap; exit code 3.
    Capacity(String),
    /// Anything else, including output IO failures; exit code 1.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Capacity(m) => write!(f, "capacity error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<steerbound_core::Error> for CliError {
    fn from(e: steerbound_core::Error) -> Self {
        use steerbound_core::Error;
        match e {
            Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            Error::Precision(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
