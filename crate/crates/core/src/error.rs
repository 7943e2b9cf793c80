use thiserror::Error;

use crate::nc_lp::MaximalNormResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("aliasing: |lambda| = {lambda} needs at least {needed} center samples, have {have}")]
    Aliasing { lambda: i64, needed: usize, have: usize },

    #[error("tail energy {tail:.3e} (relative) exceeds {limit:.1e}; increase the number of modes")]
    TailEnergy { tail: f64, limit: f64 },

    #[error("insufficient decay: |profile| = {value:.3e} at truncation radius {radius}")]
    InsufficientDecay { value: f64, radius: f64 },

    #[error("radius {radius} exceeds interpolable range [0, {limit}]")]
    OutOfRange { radius: f64, limit: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("solver did not converge after {iterations} iterations (gap {gap:.3e})")]
    NonConvergence {
        iterations: usize,
        gap: f64,
        last: Option<Box<MaximalNormResult>>,
    },

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("version mismatch: file has version {found}, expected {expected}")]
    Version { found: u32, expected: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
