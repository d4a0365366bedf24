use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] cvqkd::Error),

    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    /// 0 success, 1 I/O, 2 invalid physics or configuration, 3 unreachable constraint.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Core(cvqkd::Error::Constraint(_)) => 3,
            CliError::Core(_) | CliError::Config(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
