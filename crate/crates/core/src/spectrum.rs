//! Closed-form bound-state spectrum.
//!
//! With `λ = ħ[√(ν² + B + C) + √(ν² + B − C)]` and `N = n₂ + ñ₂`, the
//! quantization condition `2(N + 1)ħω + ωλ − a = 0` fixes the oscillator
//! frequency and `E = −2mω²`, i.e.
//!
//! ```text
//! E = −m Z² e⁴ / (2ħ² n_eff²),   n_eff = N + 1 + λ/(2ħ)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{plane_angular_momenta_sq, PotentialParams, Units};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n2: u32,
    pub n2_tilde: u32,
    pub nu: u32,
}

impl QuantumNumbers {
    pub fn new(n2: u32, n2_tilde: u32, nu: u32) -> Self {
        Self { n2, n2_tilde, nu }
    }

    pub fn n_sum(&self) -> u32 {
        self.n2 + self.n2_tilde
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    /// For collapsed levels from [`enumerate_levels`] this is the
    /// representative `(n₂ = N, ñ₂ = 0, ν)`.
    pub qn: QuantumNumbers,
    pub lambda: f64,
    pub n_eff: f64,
    pub omega: f64,
    /// Number of `(n₂, ñ₂)` splittings with the same sum, `N + 1`.
    pub degeneracy: u32,
}

impl Level {
    pub fn n_sum(&self) -> u32 {
        self.qn.n_sum()
    }
}

/// `λ = ħ[√(ν² + B + C) + √(ν² + B − C)]`.
pub fn lambda_value(params: &PotentialParams, nu: u32) -> Result<f64> {
    let (plus, minus) = plane_angular_momenta_sq(params, nu);
    if plus < 0.0 || minus < 0.0 {
        return Err(Error::InvalidChannel {
            nu,
            b: params.b(),
            c: params.c(),
        });
    }
    Ok(params.units().hbar * (plus.sqrt() + minus.sqrt()))
}

/// The quantization function `f(ω) = 2(N + 1)ħω + ωλ − a`.
pub fn quantization_function(params: &PotentialParams, qn: &QuantumNumbers, omega: f64) -> Result<f64> {
    let lambda = lambda_value(params, qn.nu)?;
    Ok(omega * action_sum(params.units().hbar, qn.n_sum(), lambda) - params.coulomb_strength())
}

/// `2(N + 1)ħ + λ`
fn action_sum(hbar: f64, n_sum: u32, lambda: f64) -> f64 {
    2.0 * (f64::from(n_sum) + 1.0) * hbar + lambda
}

/// Root of the quantization function, `ω = a/(2(N + 1)ħ + λ)`.
pub fn quantization_omega(params: &PotentialParams, qn: &QuantumNumbers) -> Result<f64> {
    let lambda = lambda_value(params, qn.nu)?;
    Ok(params.coulomb_strength() / action_sum(params.units().hbar, qn.n_sum(), lambda))
}

fn level_from_lambda(params: &PotentialParams, qn: QuantumNumbers, lambda: f64) -> Level {
    let u = params.units();
    let n_sum = qn.n_sum();
    let n_eff = f64::from(n_sum) + 1.0 + lambda / (2.0 * u.hbar);
    let z = params.z();
    let energy = -u.mass * z * z * u.e2 * u.e2 / (2.0 * u.hbar * u.hbar * n_eff * n_eff);
    Level {
        energy,
        qn,
        lambda,
        n_eff,
        omega: params.coulomb_strength() / action_sum(u.hbar, n_sum, lambda),
        degeneracy: n_sum + 1,
    }
}

pub fn energy_level(params: &PotentialParams, qn: &QuantumNumbers) -> Result<Level> {
    let lambda = lambda_value(params, qn.nu)?;
    Ok(level_from_lambda(params, *qn, lambda))
}

/// Every valid `(N, ν)` with `N <= n_sum_max`, `ν <= nu_max`, one collapsed
/// [`Level`] each, sorted by energy, then `ν`, then `N`. Invalid channels
/// are skipped, so the list is empty when none is valid.
pub fn enumerate_levels(params: &PotentialParams, n_sum_max: u32, nu_max: u32) -> Vec<Level> {
    let mut levels = Vec::new();
    for nu in 0..=nu_max {
        let Ok(lambda) = lambda_value(params, nu) else {
            continue;
        };
        for n_sum in 0..=n_sum_max {
            levels.push(level_from_lambda(params, QuantumNumbers::new(n_sum, 0, nu), lambda));
        }
    }
    levels.sort_by(|x, y| {
        x.energy
            .total_cmp(&y.energy)
            .then(x.qn.nu.cmp(&y.qn.nu))
            .then(x.n_sum().cmp(&y.n_sum()))
    });
    levels
}

/// Sorted distinct values, merging neighbours closer than `rel_tol`.
pub fn distinct_energies(levels: &[Level], rel_tol: f64) -> Vec<f64> {
    let mut energies: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    energies.sort_by(f64::total_cmp);
    energies.dedup_by(|a, b| (*a - *b).abs() <= rel_tol * a.abs().max(b.abs()));
    energies
}

/// Ring-shaped model `V = γσ²(2a₀/r − γa₀²/(r² sin²θ)) E₀`, where `a₀` is
/// the Bohr radius and `E₀ = −me⁴/2ħ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HartmannParams {
    gamma: f64,
    sigma: f64,
    units: Units,
}

impl HartmannParams {
    pub fn new(gamma: f64, sigma: f64) -> Result<Self> {
        Self::with_units(gamma, sigma, Units::ATOMIC)
    }

    pub fn with_units(gamma: f64, sigma: f64, units: Units) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("sigma", sigma)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        units.validate()?;
        Ok(Self { gamma, sigma, units })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn units(&self) -> Units {
        self.units
    }

    /// `Z = γσ²`, `B = γ²σ²`, `C = 0`.
    pub fn potential_params(&self) -> PotentialParams {
        let gs2 = self.gamma * self.sigma * self.sigma;
        PotentialParams::with_units(gs2, self.gamma * gs2, 0.0, self.units)
            .expect("positive gamma and sigma give a valid parameter set")
    }

    /// The model potential in its original form.
    pub fn potential(&self, r: f64, theta: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("r must be positive, got {r}")));
        }
        let sin = theta.sin();
        if sin.abs() <= crate::potential::DEFAULT_AXIS_EPSILON {
            return Err(Error::AxisSingularity {
                theta,
                sin_theta: sin,
                epsilon: crate::potential::DEFAULT_AXIS_EPSILON,
            });
        }
        let a0 = self.units.bohr_radius();
        let e0 = self.units.hydrogen_ground_energy();
        let gs2 = self.gamma * self.sigma * self.sigma;
        Ok(gs2 * (2.0 * a0 / r - self.gamma * a0 * a0 / (r * r * sin * sin)) * e0)
    }
}

/// `E = −mγ²σ⁴e⁴ / (2ħ²[N + 1 + √(ν² + γ²σ²)]²)`, evaluated directly.
pub fn hartmann_energy(h: &HartmannParams, qn: &QuantumNumbers) -> Level {
    let u = h.units;
    let gs = h.gamma * h.sigma;
    let gs2 = gs * h.sigma;
    let root = (f64::from(qn.nu).powi(2) + gs * gs).sqrt();
    let n_sum = qn.n_sum();
    let n_eff = f64::from(n_sum) + 1.0 + root;
    let energy = -u.mass * gs2 * gs2 * u.e2 * u.e2 / (2.0 * u.hbar * u.hbar * n_eff * n_eff);
    let lambda = 2.0 * u.hbar * root;
    Level {
        energy,
        qn: *qn,
        lambda,
        n_eff,
        omega: gs2 * u.e2 / action_sum(u.hbar, n_sum, lambda),
        degeneracy: n_sum + 1,
    }
}

/// Coulomb field plus a thin solenoid along the z-axis with flux ratio
/// `α = ZeF/(2πħc)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbParams {
    z: f64,
    alpha: f64,
    units: Units,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbLevel {
    pub level: Level,
    /// `|M| = |ν − α|`
    pub m_abs: f64,
    /// `|M|` is an integer, so the level coincides with a hydrogen-like one.
    pub coulombian: bool,
}

/// Absolute tolerance on `|M| − round(|M|)` for [`AbLevel::coulombian`].
pub const COULOMBIAN_TOL: f64 = 1e-12;

impl AbParams {
    pub fn new(z: f64, alpha: f64) -> Result<Self> {
        Self::with_units(z, alpha, Units::ATOMIC)
    }

    pub fn with_units(z: f64, alpha: f64, units: Units) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidParams(format!("Z must be positive, got {z}")));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParams(format!("alpha must be finite, got {alpha}")));
        }
        units.validate()?;
        Ok(Self { z, alpha, units })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn m_abs(&self, nu: u32) -> f64 {
        (f64::from(nu) - self.alpha).abs()
    }

    /// The ring-family member reproducing channel `ν`: `B = α² − 2αν`,
    /// `C = 0`, so that `√(ν² + B) = |ν − α|`.
    pub fn channel_params(&self, nu: u32) -> PotentialParams {
        let b = self.alpha * self.alpha - 2.0 * self.alpha * f64::from(nu);
        PotentialParams::with_units(self.z, b, 0.0, self.units).expect("validated on construction")
    }
}

/// `E = −mZ²e⁴ / (2ħ²[N + 1 + |M|]²)`.
pub fn ab_energy(ab: &AbParams, qn: &QuantumNumbers) -> AbLevel {
    let u = ab.units;
    let m_abs = ab.m_abs(qn.nu);
    let n_sum = qn.n_sum();
    let n_eff = f64::from(n_sum) + 1.0 + m_abs;
    let energy = -u.mass * ab.z * ab.z * u.e2 * u.e2 / (2.0 * u.hbar * u.hbar * n_eff * n_eff);
    let lambda = 2.0 * u.hbar * m_abs;
    AbLevel {
        level: Level {
            energy,
            qn: *qn,
            lambda,
            n_eff,
            omega: ab.z * u.e2 / action_sum(u.hbar, n_sum, lambda),
            degeneracy: n_sum + 1,
        },
        m_abs,
        coulombian: (m_abs - m_abs.round()).abs() <= COULOMBIAN_TOL,
    }
}

/// Collapsed AB levels over `N <= n_sum_max`, `ν <= nu_max`, in the same
/// order as [`enumerate_levels`].
pub fn enumerate_ab_levels(ab: &AbParams, n_sum_max: u32, nu_max: u32) -> Vec<AbLevel> {
    let mut levels: Vec<AbLevel> = (0..=nu_max)
        .flat_map(|nu| (0..=n_sum_max).map(move |n| QuantumNumbers::new(n, 0, nu)))
        .map(|qn| ab_energy(ab, &qn))
        .collect();
    levels.sort_by(|x, y| {
        x.level
            .energy
            .total_cmp(&y.level.energy)
            .then(x.level.qn.nu.cmp(&y.level.qn.nu))
            .then(x.level.n_sum().cmp(&y.level.n_sum()))
    });
    levels
}
