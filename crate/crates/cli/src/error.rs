//! Process-level failures and their exit codes.
//!
//! 0 success, 1 verification mismatch, 2 bad flags, 3 a size ceiling,
//! 4 an unusable cache file, 5 input/output. Code 1 is not an error
//! variant here; `verify` reports mismatches as ordinary output.

use std::path::PathBuf;

use graphgen::engine::EngineError;
use graphgen::oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("symmetry factor of a class does not fit in 64 bits")]
    SymmetryOverflow,
    #[error("cache file {} is not usable ({reason}); run `graphgen cache clear`", path.display())]
    StaleCache { path: PathBuf, reason: String },
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(EngineError::CeilingExceeded { .. }) => 3,
            CliError::Engine(_) => 2,
            CliError::Oracle(OracleError::CeilingExceeded { .. }) => 3,
            CliError::Oracle(OracleError::Engine(EngineError::CeilingExceeded { .. })) => 3,
            CliError::Oracle(_) => 2,
            CliError::SymmetryOverflow => 3,
            CliError::StaleCache { .. } => 4,
            CliError::Io(_) => 5,
        }
    }
}
