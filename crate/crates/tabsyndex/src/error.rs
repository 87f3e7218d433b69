//! Crate-wide error type.

use crate::table::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error("missing value at row {row}, column '{column}'")]
    MissingValue { row: usize, column: String },

    #[error("non-finite value at row {row}, column '{column}'")]
    NonFinite { row: usize, column: String },

    #[error("invalid table: {}", format_violations(.0))]
    InvalidTable(Vec<Violation>),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("invalid argument '{name}': {message}")]
    InvalidArgument { name: String, message: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("labels contain a single class; a binary fit needs both")]
    SingleClassLabels,

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown dataset '{0}'")]
    UnknownDataset(String),

    #[error("network error fetching {url}: {message} (retryable)")]
    Network { url: String, message: String },

    #[error("checksum mismatch for {name}: expected {expected}, got {actual}")]
    ChecksumMismatch {
        name: String,
        expected: String,
        actual: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Network failures are worth retrying; everything else is not.
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::Network { .. })
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
