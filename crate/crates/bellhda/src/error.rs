use thiserror::Error;

/// Errors produced by signal construction, integration and accumulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("query at t = {t} outside signal/trajectory domain [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },

    #[error("non-finite state encountered at t = {t}")]
    NumericFailure { t: f64 },

    #[error("expectation value requested from empty coincidence counts")]
    EmptyCounts,

    #[error("setting pair {pair} accumulated no factual dwell")]
    InsufficientDwell { pair: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for config problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => 2,
            Error::NumericFailure { .. } => 3,
            _ => 1,
        }
    }
}
