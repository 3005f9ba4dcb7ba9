use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("resource limit exceeded: {what} (limit {limit}, requested {requested})")]
    ResourceLimit {
        what: &'static str,
        limit: u64,
        requested: u64,
    },

    #[error("spectrum is near-degenerate (min gap {min_gap:e}); use the branching evaluator")]
    NearDegenerate { min_gap: f64 },

    #[error(
        "optimizer did not converge after {iterations} iterations (gradient norm {grad_norm:e}, last iterate {last:?})"
    )]
    NonConvergence {
        iterations: usize,
        grad_norm: f64,
        last: Vec<f64>,
    },

    #[error("region has no point in the ordered simplex")]
    EmptyRegion,
}

impl Error {
    /// Process exit code for this error under the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            Error::NonConvergence { .. } => 4,
            _ => 2,
        }
    }
}
