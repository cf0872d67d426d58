use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or incomplete configuration, or an I/O failure.
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] scalespec::Error),
}

impl CliError {
    /// 1 for violated preconditions, 2 for config and resource problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_resource() => 1,
            _ => 2,
        }
    }
}
