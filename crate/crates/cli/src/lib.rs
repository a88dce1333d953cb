//! Command-line front end: argument parsing, file formats and command
//! execution for the `swcert` binary.

pub mod args;
pub mod check;
pub mod counts;
pub mod output;
pub mod params;
pub mod run;

pub use args::{parse_cli, Command, RunConfig};
pub use run::run;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("unknown parameter '{0}'")]
    UnknownFlag(String),
    #[error("missing required {0}")]
    MissingRequired(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("negative count {value} in table '{label}'")]
    NegativeCount { label: String, value: i64 },
    #[error(transparent)]
    Compute(#[from] swcert_core::Error),
    #[error("{0} check(s) failed")]
    CheckFailed(usize),
}

impl CliError {
    /// 0 for help and version output, 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::UnknownFlag(_) | CliError::MissingRequired(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
