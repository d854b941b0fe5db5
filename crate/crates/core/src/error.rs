use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Poles are reported as errors rather
/// than as large floats so that callers (scans, the CLI) can react to them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("tolerance not met: estimate {estimate}, achieved error {achieved:e}")]
    Tolerance { estimate: Complex64, achieved: f64 },
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// Short machine-readable tag used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Domain(_) => "domain",
            Error::NoConvergence(_) => "no_convergence",
            Error::Tolerance { .. } => "tolerance",
            Error::Divergence(_) => "divergence",
            Error::Resource(_) => "resource",
            Error::Invalid(_) => "invalid",
        }
    }
}
