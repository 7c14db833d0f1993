//! Error type shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode surfaced by the library. Messages are single-line so
/// the CLI can print them verbatim as diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read '{path}': {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV in '{path}': {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("empty dataset: '{path}' has a header row but no data rows")]
    EmptyDataset { path: PathBuf },

    #[error("duplicate column name '{name}'")]
    DuplicateColumn { name: String },

    #[error("column {index} has an empty name")]
    EmptyColumnName { index: usize },

    #[error("{role} source '{name}' is neither an existing file nor a column of the data file")]
    UnknownSource { role: &'static str, name: String },

    #[error("outcome file '{path}' must contain exactly one column, found {found}")]
    NotSingleColumn { path: PathBuf, found: usize },

    #[error("{column}: outcome value '{value}' at data row {row} is not a permitted category")]
    OutcomeOutsideCategories {
        column: String,
        row: usize,
        value: String,
    },

    #[error("{column}: expected {expected} outcome values, found {found}")]
    OutcomeLengthMismatch {
        column: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid schema: {0}")]
    InvalidSchema(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("ignored attribute '{name}' is not an attribute of the dataset")]
    UnknownIgnoredAttribute { name: String },

    #[error("unknown metric '{token}' (expected demographic_parity, predictive_parity, predictive_equality, or equalized_opportunities)")]
    UnknownMetric { token: String },

    #[error("unknown output format '{token}' (expected table, csv, or json)")]
    UnknownFormat { token: String },

    #[error("unknown engine '{token}' (expected fused or naive)")]
    UnknownEngine { token: String },

    #[error("invalid synthetic spec: {0}")]
    InvalidSynthSpec(String),

    #[error("enumeration cap exceeded: {candidates} candidate itemsets, cap {cap}")]
    EnumerationCap { candidates: u64, cap: u64 },

    #[error("engine mismatch at min_support {min_support}, max_length {max_length}: fused and naive reports differ")]
    EngineMismatch { min_support: f64, max_length: usize },
}
