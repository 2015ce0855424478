use noncentral_numerics::{integrate, QuadOptions};
use serde::{Deserialize, Serialize};

use super::kernel::{ln_channel_kernel_2d, ln_oscillator_kernel_4d, KernelQuery, Point4};
use super::{LN_OVERFLOW, LN_UNDERFLOW};
use crate::error::{Error, Result};
use crate::potential::{plane_angular_momenta_sq, PotentialParams, Units};

/// Which part of the kernel is integrated over β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Sector {
    /// The full 4D kernel; its slowest decay comes from the lowest state overall.
    Full,
    /// The single angular channel with plane indices `μ₁ = √(ν² + B + C)`,
    /// `μ₂ = √(ν² + B − C)`. Only the radii `|u⃗|`, `|v⃗|` of the endpoints
    /// enter; the azimuthal phase factor is dropped.
    Channel { nu: u32, mu1: f64, mu2: f64 },
}

impl Sector {
    pub fn channel(params: &PotentialParams, nu: u32) -> Result<Self> {
        let (plus, minus) = plane_angular_momenta_sq(params, nu);
        if plus < 0.0 || minus < 0.0 {
            return Err(Error::InvalidChannel {
                nu,
                b: params.b(),
                c: params.c(),
            });
        }
        Ok(Sector::Channel {
            nu,
            mu1: plus.sqrt(),
            mu2: minus.sqrt(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventOptions {
    /// Upper end of the quadrature; `None` means `200/ω`. The remainder is
    /// added as an exponential tail.
    pub max_beta: Option<f64>,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for ResolventOptions {
    fn default() -> Self {
        Self {
            max_beta: None,
            rel_tol: 1e-9,
            max_evals: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventQuery {
    pub energy: f64,
    pub a: Point4,
    pub b: Point4,
    pub shift: f64,
    pub units: Units,
    pub sector: Sector,
    pub options: ResolventOptions,
}

impl ResolventQuery {
    pub fn new(params: &PotentialParams, energy: f64, a: Point4, b: Point4) -> Self {
        Self {
            energy,
            a,
            b,
            shift: params.coulomb_strength(),
            units: params.units(),
            sector: Sector::Full,
            options: ResolventOptions::default(),
        }
    }

    /// Resolvent of the bare oscillator pair (`a = 0`).
    pub fn pure_oscillator(units: Units, energy: f64, a: Point4, b: Point4) -> Self {
        Self {
            energy,
            a,
            b,
            shift: 0.0,
            units,
            sector: Sector::Full,
            options: ResolventOptions::default(),
        }
    }

    pub fn with_sector(mut self, sector: Sector) -> Self {
        self.sector = sector;
        self
    }

    pub fn with_options(mut self, options: ResolventOptions) -> Self {
        self.options = options;
        self
    }

    pub fn at_energy(mut self, energy: f64) -> Self {
        self.energy = energy;
        self
    }

    /// `ω(E) = √(−E/2m)`
    pub fn omega(&self) -> Result<f64> {
        if !(self.energy < 0.0) || !self.energy.is_finite() {
            return Err(Error::NotBound { energy: self.energy });
        }
        Ok((-self.energy / (2.0 * self.units.mass)).sqrt())
    }

    fn ln_integrand(&self, omega: f64, beta: f64) -> Result<f64> {
        match self.sector {
            Sector::Full => ln_oscillator_kernel_4d(&KernelQuery {
                a: self.a,
                b: self.b,
                beta,
                omega,
                shift: self.shift,
                units: self.units,
            }),
            Sector::Channel { mu1, mu2, .. } => {
                let ku = ln_channel_kernel_2d(self.a.u_norm(), self.b.u_norm(), mu1, omega, beta, &self.units)?;
                let kv = ln_channel_kernel_2d(self.a.v_norm(), self.b.v_norm(), mu2, omega, beta, &self.units)?;
                Ok(self.shift * beta / self.units.hbar + ku + kv)
            }
        }
    }

    fn coincident(&self) -> bool {
        match self.sector {
            Sector::Full => self.a == self.b,
            Sector::Channel { .. } => self.a.u_norm() == self.b.u_norm() && self.a.v_norm() == self.b.v_norm(),
        }
    }

    fn max_beta(&self, omega: f64) -> Result<f64> {
        let max_beta = self.options.max_beta.unwrap_or(200.0 / omega);
        if !(max_beta > 0.0) || !max_beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "max_beta must be positive, got {max_beta}"
            )));
        }
        Ok(max_beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventValue {
    pub value: f64,
    /// Quadrature error estimate on `[0, max_beta]`.
    pub abs_err: f64,
    pub rel_err: f64,
    /// `K(max_beta)/κ`, the analytic remainder beyond `max_beta`.
    pub tail: f64,
    /// Decay rate `κ` of the integrand at large β.
    pub decay_rate: f64,
    pub omega: f64,
    pub max_beta: f64,
    pub evals: usize,
}

/// Number of halvings of `max_beta` used as breakpoints towards β = 0.
const GEOMETRIC_BREAKS: i32 = 60;

/// Large-β decay rate `κ` of the integrand, from its log at `0.75 max_beta`
/// and `max_beta`. Non-positive values mean the β-integral diverges.
pub fn decay_rate(q: &ResolventQuery) -> Result<f64> {
    let omega = q.omega()?;
    let max_beta = q.max_beta(omega)?;
    decay_rate_at(q, omega, max_beta)
}

fn decay_rate_at(q: &ResolventQuery, omega: f64, max_beta: f64) -> Result<f64> {
    let near = 0.75 * max_beta;
    let l_near = q.ln_integrand(omega, near)?;
    let l_far = q.ln_integrand(omega, max_beta)?;
    Ok((l_near - l_far) / (max_beta - near))
}

/// Rates at or below this multiple of the natural scale count as divergent.
fn divergence_floor(q: &ResolventQuery, omega: f64) -> f64 {
    let mus = match q.sector {
        Sector::Full => 0.0,
        Sector::Channel { mu1, mu2, .. } => mu1 + mu2,
    };
    64.0 * f64::EPSILON * ((2.0 + mus) * omega + q.shift.abs() / q.units.hbar)
}

/// `∫₀^∞ dβ K(b, a; β)` at `ω(E)`.
///
/// The integrand is integrated adaptively on `[0, max_beta]` with breakpoints
/// at `max_beta·2^{−k}`, and the remaining exponential tail is added in
/// closed form. Fails with [`Error::Divergent`] when the integrand does not
/// decay, i.e. when `E` is at or above the lowest level of the sector.
pub fn resolvent_element(q: &ResolventQuery) -> Result<ResolventValue> {
    let omega = q.omega()?;
    if q.coincident() {
        return Err(Error::CoincidentEndpoints);
    }
    let max_beta = q.max_beta(omega)?;
    let rate = decay_rate_at(q, omega, max_beta)?;
    if !(rate > divergence_floor(q, omega)) {
        return Err(Error::Divergent {
            energy: q.energy,
            growth: -rate,
        });
    }
    let ln_far = q.ln_integrand(omega, max_beta)?;
    if ln_far > LN_OVERFLOW {
        return Err(Error::Overflow { ln: ln_far });
    }
    let tail = if ln_far < LN_UNDERFLOW {
        0.0
    } else {
        ln_far.exp() / rate
    };

    let mut breaks: Vec<f64> = (0..=GEOMETRIC_BREAKS)
        .rev()
        .map(|k| max_beta * 0.5f64.powi(k))
        .collect();
    breaks.insert(0, 0.0);

    // kernel failures cannot occur for β > 0 with a validated ω; overflow
    // surfaces as a non-finite value and is reported by the integrator
    let f = |beta: f64| match q.ln_integrand(omega, beta) {
        Ok(ln) if ln < LN_UNDERFLOW => 0.0,
        Ok(ln) if ln > LN_OVERFLOW => f64::INFINITY,
        Ok(ln) => ln.exp(),
        Err(_) => f64::NAN,
    };
    let opts = QuadOptions {
        rel_tol: q.options.rel_tol,
        abs_tol: 0.0,
        max_evals: q.options.max_evals,
    };
    let quad = integrate(f, &breaks, &opts)?;
    let value = quad.value + tail;
    Ok(ResolventValue {
        value,
        abs_err: quad.abs_err,
        rel_err: quad.abs_err / value.abs(),
        tail,
        decay_rate: rate,
        omega,
        max_beta,
        evals: quad.evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn pt(u: f64, phi1: f64, v: f64, phi2: f64) -> Point4 {
        Point4::new([u * phi1.cos(), u * phi1.sin()], [v * phi2.cos(), v * phi2.sin()])
    }

    #[test]
    fn pure_oscillator_closed_form() {
        // ∫ K₄(x, 0; β) dβ = m e^{−mωr²/2ħ} / (2π²ħ r²)
        let origin = Point4::new([0.0; 2], [0.0; 2]);
        for &(energy, r) in &[(-0.3, 0.7), (-2.0, 0.25), (-0.05, 1.5)] {
            let x = pt(r * 0.6, 0.4, r * 0.8, -1.2);
            let q = ResolventQuery::pure_oscillator(Units::ATOMIC, energy, origin, x);
            let res = resolvent_element(&q).unwrap();
            let omega = (-energy / 2.0f64).sqrt();
            let exact = (-omega * r * r / 2.0).exp() / (2.0 * PI * PI * r * r);
            assert_relative_eq!(res.value, exact, max_relative = 1e-9);
            assert!(res.rel_err < 1e-9);
        }
    }

    #[test]
    fn pure_oscillator_closed_form_units() {
        let units = Units {
            mass: 2.0,
            hbar: 0.5,
            e2: 1.0,
        };
        let origin = Point4::new([0.0; 2], [0.0; 2]);
        let x = pt(0.3, 0.0, 0.4, 0.0);
        let r = 0.5;
        let q = ResolventQuery::pure_oscillator(units, -0.8, origin, x);
        let omega = (0.8 / 4.0f64).sqrt();
        let exact = 2.0 * (-2.0 * omega * r * r / (2.0 * 0.5)).exp() / (2.0 * PI * PI * 0.5 * r * r);
        assert_relative_eq!(resolvent_element(&q).unwrap().value, exact, max_relative = 1e-9);
    }

    #[test]
    fn hydrogen_threshold() {
        let params = PotentialParams::coulomb(1.0).unwrap();
        let a = pt(0.1, 0.0, 0.1, 0.0);
        let b = pt(0.1, PI / 2.0, 0.1, PI / 2.0);
        let q = ResolventQuery::new(&params, -0.6, a, b);
        let ok = resolvent_element(&q).unwrap();
        assert!(ok.value > 0.0 && ok.rel_err < 1e-8);
        assert!(matches!(
            resolvent_element(&q.at_energy(-0.4)),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn channel_decay_matches_quantization() {
        // in channel ν the integrand decays as e^{−(2ω + ωλ/ħ − a/ħ)β}
        let params = PotentialParams::new(1.0, 3.0, 1.0).unwrap();
        let a = pt(0.3, 0.0, 0.5, 0.0);
        let b = pt(0.6, 0.0, 0.2, 0.0);
        let q = ResolventQuery::new(&params, -0.2, a, b).with_sector(Sector::channel(&params, 1).unwrap());
        let omega = 0.1f64.sqrt();
        let lambda = 5f64.sqrt() + 3f64.sqrt();
        assert_relative_eq!(
            decay_rate(&q).unwrap(),
            2.0 * omega + omega * lambda - 1.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn rejects_bad_queries() {
        let params = PotentialParams::coulomb(1.0).unwrap();
        let a = pt(0.1, 0.0, 0.1, 0.0);
        assert!(matches!(
            resolvent_element(&ResolventQuery::new(&params, -0.6, a, a)),
            Err(Error::CoincidentEndpoints)
        ));
        let b = pt(0.1, 1.0, 0.1, 1.0);
        assert!(matches!(
            resolvent_element(&ResolventQuery::new(&params, 0.1, a, b)),
            Err(Error::NotBound { .. })
        ));
        let chan = ResolventQuery::new(&params, -0.6, a, b).with_sector(Sector::channel(&params, 0).unwrap());
        assert!(matches!(resolvent_element(&chan), Err(Error::CoincidentEndpoints)));
        let bad = PotentialParams::new(1.0, 0.0, 1.0).unwrap();
        assert!(matches!(Sector::channel(&bad, 0), Err(Error::InvalidChannel { .. })));
    }
}
