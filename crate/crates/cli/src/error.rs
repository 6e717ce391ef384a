use std::path::PathBuf;

use pseudonull::diffalg::AlgebraError;
use pseudonull::geometry::GeometryError;
use pseudonull::numerics::NumericsError;
use thiserror::Error;

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

impl CliError {
    pub fn parse(input: &str, err: impl std::fmt::Display) -> Self {
        CliError::Parse {
            input: input.to_string(),
            message: err.to_string(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Bad input of any kind maps to [`EXIT_USAGE`]; failures while
    /// producing output map to [`EXIT_FAIL`].
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Csv { .. } => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Geometry(GeometryError::Algebra(e))
    }
}
