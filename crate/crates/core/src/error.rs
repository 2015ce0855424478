use noncentral_numerics::{QuadError, RootError};
use noncentral_oracle::OracleError;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("theta = {theta} is within {epsilon:e} of the z-axis (sin theta = {sin_theta:e})")]
    AxisSingularity { theta: f64, sin_theta: f64, epsilon: f64 },
    #[error("parabolic point (xi = {xi}, eta = {eta}) lies on the ring singularity")]
    RingSingularity { xi: f64, eta: f64 },
    #[error("channel nu = {nu} is invalid for B = {b}, C = {c}: nu² + B ± C must be non-negative")]
    InvalidChannel { nu: u32, b: f64, c: f64 },
    #[error("no valid channel in the requested range")]
    NoValidChannels,
    #[error("energy {energy} is not a bound-state energy (must be negative)")]
    NotBound { energy: f64 },
    #[error("no root of the quantization function in the bracket [{lo}, {hi}]")]
    NoRootInBracket { lo: f64, hi: f64 },
    #[error("root finding failed: {0}")]
    Root(RootError),
    #[error("resolvent diverges at E = {energy}: kernel tail grows with rate {growth:e} (E is at or above the lowest level of the sector)")]
    Divergent { energy: f64, growth: f64 },
    #[error("amplitude overflows double precision (ln K = {ln})")]
    Overflow { ln: f64 },
    #[error("short-time divergence: endpoints coincide in every oscillator plane")]
    CoincidentEndpoints,
    #[error("quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
    #[error("oracle failed in channel nu = {nu}: {source}")]
    Oracle {
        nu: u32,
        #[source]
        source: OracleError,
    },
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The request itself has no answer (bad channel, no bound states, ...).
    Domain,
    /// The request is meaningful but a numerical method did not deliver.
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParams(_)
            | Error::Domain(_)
            | Error::AxisSingularity { .. }
            | Error::RingSingularity { .. }
            | Error::InvalidChannel { .. }
            | Error::NoValidChannels
            | Error::NotBound { .. }
            | Error::CoincidentEndpoints => ErrorKind::Domain,
            Error::Oracle {
                source: OracleError::InvalidChannel { .. } | OracleError::InvalidInput(_),
                ..
            } => ErrorKind::Domain,
            Error::NoRootInBracket { .. }
            | Error::Root(_)
            | Error::Divergent { .. }
            | Error::Overflow { .. }
            | Error::Quadrature(_)
            | Error::Oracle { .. } => ErrorKind::Numerical,
        }
    }
}
