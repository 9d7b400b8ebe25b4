use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Identifies one (alternative, criterion) time series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberId {
    pub alternative: String,
    pub criterion: String,
}

impl FiberId {
    pub fn new(alternative: impl Into<String>, criterion: impl Into<String>) -> Self {
        FiberId {
            alternative: alternative.into(),
            criterion: criterion.into(),
        }
    }
}

impl fmt::Display for FiberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alternative, self.criterion)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Index(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("line {line}: duplicate cell ({alternative}, {criterion}, {time}), first seen on line {first_line}")]
    Duplicate {
        line: u64,
        first_line: u64,
        alternative: String,
        criterion: String,
        time: i64,
    },

    #[error("incomplete tensor, missing cells: {}", missing.join("; "))]
    Incomplete { missing: Vec<String> },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("fiber {fiber}: series of length {len} too short, step {step} needs at least {required} samples")]
    SeriesTooShort {
        fiber: FiberId,
        step: usize,
        len: usize,
        required: usize,
    },

    #[error("fiber {fiber}, step {step}: non-finite value during adaptation at sample {sample}")]
    Numeric {
        fiber: FiberId,
        step: usize,
        sample: usize,
    },

    #[error("config: {0}")]
    Config(String),

    #[error("fixture: {0}")]
    Fixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Input problems (bad data, bad config, unusable series) as opposed to
    /// internal or I/O failures. The CLI maps these to exit code 2.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Fixture(_))
    }

    /// Pipeline stage the error originated from, for diagnostics.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Index(_) => "tensor",
            Error::Validation(_) => "validation",
            Error::Duplicate { .. } | Error::Incomplete { .. } | Error::Parse { .. } => "ingest",
            Error::SeriesTooShort { .. } | Error::Numeric { .. } => "predict",
            Error::Config(_) => "config",
            Error::Fixture(_) => "experiments",
            Error::Io(_) => "io",
        }
    }
}
