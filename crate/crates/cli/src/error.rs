use std::path::PathBuf;

use thiserror::Error;
use tightcut_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad {what} argument: {msg}")]
    Argument { what: &'static str, msg: String },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0} invariant violation(s)")]
    Violations(usize),
}

impl CliError {
    /// 1 for unreadable or malformed input, 2 for inputs the algorithms
    /// refuse, 3 for a failed internal claim or oracle check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Argument { .. } => 1,
            CliError::Core(e) if e.is_internal() => 3,
            CliError::Core(_) => 2,
            CliError::Violations(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
