use thiserror::Error;

use resreg::ComputeError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: exit code 2.
    #[error("{0}")]
    User(String),
    /// A violated internal invariant: exit code 3.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<ComputeError> for CliError {
    fn from(e: ComputeError) -> Self {
        match e {
            ComputeError::Internal(_) | ComputeError::NonMinimal | ComputeError::FilterRegularityFailed { .. } => {
                CliError::Internal(e.to_string())
            }
            other => CliError::User(other.to_string()),
        }
    }
}
