//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by model construction, the numerical engines and the sweep harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: generator has dimension {generator}, state has {state}")]
    DimensionMismatch { generator: usize, state: usize },

    #[error(
        "quadrature grid inadequate at tau = {tau}: {reason} \
         (estimated truncated mass {estimated_truncation:.3e})"
    )]
    InadequateGrid {
        tau: f64,
        reason: &'static str,
        estimated_truncation: f64,
    },

    #[error("pump distribution tail beyond n_max = {n_max} is {tail:.3e}, above tolerance {tolerance:.3e}")]
    PumpTail {
        n_max: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("tridiagonal eigensolver failed to converge for eigenvalue {index}")]
    NoConvergence { index: usize },

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("malformed run record: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("toml encode: {0}")]
    TomlEncode(#[from] toml::ser::Error),

    #[error("toml decode: {0}")]
    TomlDecode(#[from] toml::de::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
