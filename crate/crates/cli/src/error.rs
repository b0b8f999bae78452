use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("no entanglement boundary bracketed on [0, {d_max}]")]
    NoBracket { d_max: f64 },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] fuzzpair_core::Error),
}

impl CliError {
    /// Process exit code: 1 usage/IO, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec(_) | CliError::Io { .. } => 1,
            CliError::NoBracket { .. } => 3,
            CliError::Core(fuzzpair_core::Error::NonConvergence(_)) => 3,
            CliError::Core(_) => 1,
        }
    }
}
