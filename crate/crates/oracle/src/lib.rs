//! Finite-difference oracles for the separated Schrödinger equation of the
//! Coulomb plus ring-shaped potential
//!
//! ```text
//! V(r, θ) = -Z e²/r + ħ²/(2m r² sin²θ) · (B + C cosθ)
//! ```
//!
//! Separating in spherical coordinates gives an angular Sturm–Liouville
//! problem in `x = cosθ` whose eigenvalue is `ℓ'(ℓ'+1)`, and a radial
//! Coulomb problem with that (generally non-integer) `ℓ'` in the centrifugal
//! term. Both are solved here by plain discretization and bisection; nothing
//! in this crate knows the closed-form spectrum, so agreement with it is
//! evidence rather than a restatement.

pub mod angular;
pub mod radial;

use thiserror::Error;

pub use angular::{angular_eigenvalues, AngularProblem, AngularSolution};
pub use radial::{radial_eigenvalues, RadialGrid, RadialProblem, RadialSolution};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    /// `ν² + B ± C < 0`: the angular operator is unbounded below.
    #[error("channel nu = {nu} is invalid for B = {b}, C = {c}: nu² + B ± C must be non-negative")]
    InvalidChannel { nu: u32, b: f64, c: f64 },
    #[error("{what}: Richardson change {change:e} exceeds tolerance {tol:e}")]
    NonConvergence { what: &'static str, change: f64, tol: f64 },
    #[error("box too small: r_max = {r_max}, relative tail amplitude {tail:e} > {threshold:e}")]
    BoxTooSmall { r_max: f64, tail: f64, threshold: f64 },
    #[error("only {found} bound states below zero, {requested} requested")]
    TooFewBoundStates { found: usize, requested: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Tridiag(#[from] noncentral_numerics::TridiagError),
}

/// Effective angular parameter `ℓ' ≥ 0` from a separation constant `ℓ'(ℓ'+1)`.
pub fn l_eff_from_separation(separation: f64) -> f64 {
    0.5 * ((1.0 + 4.0 * separation).max(0.0).sqrt() - 1.0)
}

/// Two-grid Richardson extrapolation for a second-order scheme (`h` and `h/2`).
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Repeated Richardson elimination on grids `h, h/2, h/4, …` for an error
/// expansion `Σ A_k h^{p_k}` with known exponents.
///
/// Each pass removes the next exponent in `exponents` and shortens the
/// table by one, so at most `values.len() - 1` exponents are used. Returns
/// the extrapolated value and the last correction applied.
pub fn richardson_known_orders(values: &[f64], exponents: &[f64]) -> (f64, f64) {
    let mut table = values.to_vec();
    let mut last_change = 0.0;
    for &p in exponents.iter().take(values.len().saturating_sub(1)) {
        let r = 2f64.powf(p);
        let next: Vec<f64> = table.windows(2).map(|w| w[1] + (w[1] - w[0]) / (r - 1.0)).collect();
        last_change = next[next.len() - 1] - table[table.len() - 1];
        table = next;
    }
    (table[table.len() - 1], last_change)
}
