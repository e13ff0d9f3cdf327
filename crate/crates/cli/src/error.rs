use std::path::PathBuf;

use thiserror::Error;

/// Failures of a `fnr` run, each mapped to one exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub const EXIT_VERIFICATION: u8 = 1;
    pub const EXIT_USAGE: u8 = 2;
    pub const EXIT_IO: u8 = 3;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => Self::EXIT_USAGE,
            CliError::Io { .. } => Self::EXIT_IO,
            CliError::Verification(_) => Self::EXIT_VERIFICATION,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Solver breakdowns count as verification failures; everything else the
/// library rejects is a configuration problem.
impl From<fnr_core::Error> for CliError {
    fn from(e: fnr_core::Error) -> Self {
        match e {
            fnr_core::Error::EigenNonConvergence { .. } | fnr_core::Error::LambdaGridExhausted { .. } => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
