use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    /// Unreadable or invalid configuration, or bad command-line usage.
    #[error("configuration error: {0}")]
    Config(String),

    /// A run finished but its outcome is unacceptable.
    #[error("{0}")]
    Runtime(String),

    #[error(transparent)]
    Core(#[from] submod::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl BenchError {
    /// Process exit status: 1 for configuration problems, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 1,
            _ => 2,
        }
    }
}
