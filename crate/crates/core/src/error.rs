use std::path::PathBuf;

/// Errors surfaced by the numerical routines and the experiment runner.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: f64,
        limit: f64,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("requested tolerance {tol:e} is below the double-precision floor {floor:e}")]
    Precision { tol: f64, floor: f64 },
    #[error("|zeta| = {modulus:e} below near-zero threshold at sigma = {sigma}, t = {t}")]
    NearZero { sigma: f64, t: f64, modulus: f64 },
    #[error("eigen-solver failed to converge after {attempts} draws")]
    NoConvergence { attempts: u32 },
    #[error("schema mismatch in {path}: {detail}")]
    Schema { path: PathBuf, detail: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for the recoverable "resample tau" signal raised near zeta zeros.
    pub fn is_near_zero(&self) -> bool {
        matches!(self, Error::NearZero { .. })
    }
}
