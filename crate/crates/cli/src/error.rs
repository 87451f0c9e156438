use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] pwave_core::Error),
    #[error("{failed} check(s) outside tolerance")]
    Tolerance { failed: usize },
}

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const TOLERANCE: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const IO: i32 = 3;
    pub const NUMERICAL: i32 = 4;
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Core(pwave_core::Error::InvalidParameter { .. }) => exit::CONFIG,
            CliError::Core(_) => exit::NUMERICAL,
            CliError::Io { .. } => exit::IO,
            CliError::Tolerance { .. } => exit::TOLERANCE,
        }
    }
}
