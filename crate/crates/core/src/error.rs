use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A covariance or eigenproblem could not be factorized.
    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("degenerate geometry: {0}")]
    Geometry(String),

    /// Zero channel handed to a normalizing precoder.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The intended channel lies (numerically) inside the interference span.
    #[error("projection degenerate: {0}")]
    ProjectionDegenerate(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the `upa-sim` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Infeasible(_) => 3,
            Error::ProjectionDegenerate(_) | Error::DegenerateInput(_) | Error::Decomposition(_) => 4,
            _ => 1,
        }
    }
}
