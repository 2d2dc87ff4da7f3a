use thiserror::Error;

/// Errors shared across the numerical kernels and the fading/statistics layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: lower hypergeometric parameter {0} is a non-positive integer")]
    Pole(f64),

    #[error("divergent series: p={p}, q={q}, x={x}")]
    Divergence { p: usize, q: usize, x: f64 },

    #[error("series/quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("non-finite sample encountered at {0}")]
    NonFiniteSample(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("insufficient coefficients: need {needed}, have {have}")]
    InsufficientCoefficients { needed: usize, have: usize },

    #[error("bracket failure: {0}")]
    BracketFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
