use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] maxent_core::Error),
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl SweepError {
    /// Process exit code: 1 config, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Config(_) => 1,
            SweepError::Numerical(_) => 2,
            SweepError::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SweepError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, SweepError>;
