use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("v_x = {vx} lies in the critical region around eps = {eps}")]
    CriticalRegion { vx: f64, eps: f64 },

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
