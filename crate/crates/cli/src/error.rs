use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or parameters; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A geometric check failed; exit code 1.
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Geometry(#[from] brocard::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Geometry(_) => 2,
            CliError::Check(_) => 1,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}
