use noncentral_numerics::{brent, RootError, RootOptions};
use serde::{Deserialize, Serialize};

use super::resolvent::{decay_rate, ResolventQuery};
use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::spectrum::{lambda_value, quantization_function, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleSolution {
    pub energy: f64,
    pub omega: f64,
    /// `f(ω)` at the returned root.
    pub residual: f64,
}

/// An energy bracket holding every bound level: `n_eff >= 1` bounds the
/// depth by `m a²/2ħ²`.
pub fn bound_bracket(params: &PotentialParams) -> (f64, f64) {
    let u = params.units();
    let a = params.coulomb_strength();
    let depth = u.mass * a * a / (2.0 * u.hbar * u.hbar);
    (-1.01 * depth, -1e-12 * depth)
}

/// Bound-state energy as the root in `E` of `f(ω(E)) = 2(N + 1)ħω + ωλ − a`,
/// with `ω(E) = √(−E/2m)`.
pub fn spectrum_from_poles(params: &PotentialParams, qn: &QuantumNumbers, bracket: (f64, f64)) -> Result<PoleSolution> {
    let (lo, hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    if !(hi < 0.0) {
        return Err(Error::NotBound { energy: hi });
    }
    lambda_value(params, qn.nu)?;
    let mass = params.units().mass;
    let omega_of = |e: f64| (-e / (2.0 * mass)).sqrt();
    let g = |e: f64| quantization_function(params, qn, omega_of(e)).expect("channel validated above");
    let opts = RootOptions {
        x_tol: 4.0 * f64::EPSILON * lo.abs(),
        f_tol: 1e-15 * params.coulomb_strength(),
        max_iter: 300,
    };
    let energy = brent(g, lo, hi, &opts).map_err(|e| match e {
        RootError::NoSignChange { .. } => Error::NoRootInBracket { lo, hi },
        other => Error::Root(other),
    })?;
    let omega = omega_of(energy);
    Ok(PoleSolution {
        energy,
        omega,
        residual: g(energy),
    })
}

/// Lowest energy at which the β-integral of `template` stops converging,
/// located by bisection on the sign of the large-β decay rate.
///
/// `lo` must give a convergent integral and `hi` a divergent one.
pub fn divergence_onset(template: &ResolventQuery, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    let converges = |e: f64| -> Result<bool> { Ok(decay_rate(&template.at_energy(e))? > 0.0) };
    if !converges(lo)? || converges(hi)? {
        return Err(Error::NoRootInBracket { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        if (hi - lo).abs() <= rel_tol * lo.abs().max(hi.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if converges(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
