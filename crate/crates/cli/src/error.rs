use thiserror::Error;

/// Failures of a CLI command, each with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported container: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) | CliError::Json(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<splitpack::Error> for CliError {
    fn from(e: splitpack::Error) -> Self {
        match e {
            splitpack::Error::UnsupportedContainer(msg) => CliError::Unsupported(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
