use chrono::NaiveDate;
use thiserror::Error;

/// Errors produced by the ingestion, symbolization and analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// The input text does not have the expected shape (bad header, bad date).
    #[error("input format error: {0}")]
    InputFormat(String),

    #[error("input contains no data rows")]
    EmptyInput,

    /// A parameter or flag combination violates a documented constraint.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("duplicate timestamp {0}")]
    DuplicateTimestamp(NaiveDate),

    #[error("series is empty: every value is absent")]
    EmptySeries,

    #[error("cannot forward-fill: first observation ({0}) has no value")]
    LeadingGap(NaiveDate),

    #[error("non-finite value at observation {index}")]
    NonFinite { index: usize },

    #[error("insufficient data for {what}: need at least {needed} observations, got {got}")]
    InsufficientData {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("alphabet mismatch: distributions have {left} and {right} bins")]
    AlphabetMismatch { left: usize, right: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification of an [`Error`], used by front-ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Configuration,
    Input,
    InsufficientData,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) => ErrorKind::Configuration,
            Error::InputFormat(_)
            | Error::EmptyInput
            | Error::DuplicateTimestamp(_)
            | Error::EmptySeries
            | Error::LeadingGap(_)
            | Error::NonFinite { .. }
            | Error::InvalidDistribution(_)
            | Error::AlphabetMismatch { .. } => ErrorKind::Input,
            Error::InsufficientData { .. } => ErrorKind::InsufficientData,
            Error::Io(_) => ErrorKind::Io,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
