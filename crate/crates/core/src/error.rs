use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported angle: {0}")]
    UnsupportedAngle(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("capacity error: {0}")]
    Capacity(String),

    #[error("operation {source_index} cannot be scheduled: {message}")]
    Scheduling {
        source_index: usize,
        message: String,
    },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::Parse { .. } => "parse",
            Error::UnsupportedAngle(_) => "unsupported_angle",
            Error::Validation(_) => "validation",
            Error::Invariant(_) => "invariant",
            Error::Capacity(_) => "capacity",
            Error::Scheduling { .. } => "scheduling",
            Error::Domain(_) => "domain",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
