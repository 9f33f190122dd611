use std::path::PathBuf;

use bicircle_core::solver::SolverError;
use bicircle_core::surface::SurfaceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Verification(String),
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl CliError {
    /// 0 success, 1 verification failure, 2 parse, 3 hypothesis,
    /// 4 degree, 5 I/O, 6 exact factorization unavailable.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Io { .. } => 5,
            CliError::Solver(e) => match e {
                SolverError::InvariantViolated(_) | SolverError::ReplayMismatch(_) => 1,
                SolverError::Malformed(_) => 2,
                SolverError::DegreeOutOfRange(_) => 4,
                SolverError::ExactFactorizationUnavailable(_) => 6,
                _ => 3,
            },
            CliError::Surface(e) => match e {
                SurfaceError::InvalidInput(_) => 2,
                _ => 3,
            },
        }
    }
}
