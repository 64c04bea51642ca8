use thiserror::Error;

/// Failure modes shared by every layer of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {func} at {at}")]
    Pole { func: &'static str, at: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation point lies within {threshold:e} of an apparent singularity of {what}")]
    NearPole { what: &'static str, threshold: f64 },
    #[error("Re(gamma+s) = {re} does not exceed nu = {nu}; outside the strip of the Mellin transform")]
    StripViolation { re: f64, nu: f64 },
    #[error("parameter collision: {0}")]
    ParameterCollision(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("zeta argument hits the pole s=1 at k={k}")]
    ZetaPoleHit { k: usize },
    #[error("regime mismatch: expected {expected}, parameters classify as {found}")]
    RegimeMismatch { expected: String, found: String },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("direct summation needed more than {limit} terms")]
    NonconvergenceGuard { limit: u64 },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
