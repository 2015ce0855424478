use serde::{Deserialize, Serialize};

use super::{LN_OVERFLOW, LN_UNDERFLOW};
use crate::error::{Error, Result};
use crate::potential::{PotentialParams, Units, UvPoint};
use crate::special::ln_scaled_bessel_i;

/// `ln sinh x` for `x > 0`, without overflow for large `x`.
pub fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

fn check_time(omega: f64, beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParams(format!("beta must be positive, got {beta}")));
    }
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParams(format!("omega must be non-negative, got {omega}")));
    }
    Ok(())
}

fn exp_guarded(ln: f64) -> Result<f64> {
    if ln < LN_UNDERFLOW {
        Ok(0.0)
    } else if ln > LN_OVERFLOW {
        Err(Error::Overflow { ln })
    } else {
        Ok(ln.exp())
    }
}

/// The `ω = 0` limit is taken when `ωβ` is below this.
const FREE_LIMIT: f64 = 1e-280;

/// `ln` of the free-particle kernel `(m/2πħβ)^{½} exp(−m(q_a − q_b)²/2ħβ)`.
pub fn free_kernel_1d(qa: f64, qb: f64, beta: f64, units: &Units) -> f64 {
    let (m, hbar) = (units.mass, units.hbar);
    let d = qa - qb;
    0.5 * (m / (2.0 * std::f64::consts::PI * hbar * beta)).ln() - m * d * d / (2.0 * hbar * beta)
}

/// `ln` of the Euclidean Mehler kernel
///
/// ```text
/// K = (mω / 2πħ sinh ωβ)^{½} exp{−(mω / 2ħ sinh ωβ)[(q_a² + q_b²) cosh ωβ − 2 q_a q_b]}
/// ```
///
/// with the exponent rewritten as `(q_a − q_b)²/sinh ωβ + (q_a² + q_b²) tanh(ωβ/2)`
/// so that no large terms cancel.
pub fn ln_sho_kernel_1d(qa: f64, qb: f64, omega: f64, beta: f64, units: &Units) -> Result<f64> {
    check_time(omega, beta)?;
    let x = omega * beta;
    if x < FREE_LIMIT {
        return Ok(free_kernel_1d(qa, qb, beta, units));
    }
    let (m, hbar) = (units.mass, units.hbar);
    let d = qa - qb;
    let pre = 0.5 * ((m * omega / (2.0 * std::f64::consts::PI * hbar)).ln() - ln_sinh(x));
    let quad = d * d / x.sinh() + (qa * qa + qb * qb) * (0.5 * x).tanh();
    Ok(pre - m * omega / (2.0 * hbar) * quad)
}

/// Mehler kernel; amplitudes below `e^{−700}` are returned as 0.
pub fn sho_kernel_1d(qa: f64, qb: f64, omega: f64, beta: f64, units: &Units) -> Result<f64> {
    exp_guarded(ln_sho_kernel_1d(qa, qb, omega, beta, units)?)
}

/// A point of the lifted space: two plane vectors `u⃗`, `v⃗`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point4 {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl Point4 {
    pub fn new(u: [f64; 2], v: [f64; 2]) -> Self {
        Self { u, v }
    }

    pub fn from_uv(p: &UvPoint) -> Self {
        let (s1, c1) = p.phi1.sin_cos();
        let (s2, c2) = p.phi2.sin_cos();
        Self {
            u: [p.u * c1, p.u * s1],
            v: [p.v * c2, p.v * s2],
        }
    }

    pub fn u_norm(&self) -> f64 {
        self.u[0].hypot(self.u[1])
    }

    pub fn v_norm(&self) -> f64 {
        self.v[0].hypot(self.v[1])
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.u[0], self.u[1], self.v[0], self.v[1]]
    }
}

/// Endpoints and parameters of the 4D kernel `e^{aβ/ħ} Π K_1D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelQuery {
    pub a: Point4,
    pub b: Point4,
    pub beta: f64,
    pub omega: f64,
    /// The constant `a = Ze²` in `e^{aβ/ħ}`.
    pub shift: f64,
    pub units: Units,
}

impl KernelQuery {
    pub fn new(params: &PotentialParams, a: Point4, b: Point4, beta: f64, omega: f64) -> Self {
        Self {
            a,
            b,
            beta,
            omega,
            shift: params.coulomb_strength(),
            units: params.units(),
        }
    }

    /// No Coulomb shift: the bare pair of 2D oscillators.
    pub fn pure_oscillator(units: Units, a: Point4, b: Point4, beta: f64, omega: f64) -> Self {
        Self {
            a,
            b,
            beta,
            omega,
            shift: 0.0,
            units,
        }
    }
}

pub fn ln_oscillator_kernel_4d(q: &KernelQuery) -> Result<f64> {
    let mut ln = q.shift * q.beta / q.units.hbar;
    for (qa, qb) in q.a.coords().into_iter().zip(q.b.coords()) {
        ln += ln_sho_kernel_1d(qa, qb, q.omega, q.beta, &q.units)?;
    }
    Ok(ln)
}

pub fn oscillator_kernel_4d(q: &KernelQuery) -> Result<f64> {
    exp_guarded(ln_oscillator_kernel_4d(q)?)
}

/// `ln` of the angular-momentum-`μ` component of the 2D oscillator kernel,
///
/// ```text
/// K_μ(r_b, r_a; β) = (mω/ħ sinh ωβ) exp[−(mω/2ħ)(r_a² + r_b²) coth ωβ] I_μ(mω r_a r_b / ħ sinh ωβ)
/// ```
///
/// normalized so that `K_2D = (1/2π) Σ_m e^{im(φ_b − φ_a)} K_|m|`. Real
/// `μ >= 0` is allowed: that is how the ring terms enter.
pub fn ln_channel_kernel_2d(ra: f64, rb: f64, mu: f64, omega: f64, beta: f64, units: &Units) -> Result<f64> {
    check_time(omega, beta)?;
    if !(ra >= 0.0) || !(rb >= 0.0) || !(mu >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "need r_a, r_b, mu >= 0, got {ra}, {rb}, {mu}"
        )));
    }
    let (m, hbar) = (units.mass, units.hbar);
    let x = omega * beta;
    let (ln_c, phi, z) = if x < FREE_LIMIT {
        let c = m / (hbar * beta);
        (c.ln(), 0.5 * c * (ra - rb).powi(2), c * ra * rb)
    } else {
        let mw = m * omega / hbar;
        let sinh = x.sinh();
        let phi = 0.5 * mw * ((ra - rb).powi(2) / sinh + (ra * ra + rb * rb) * (0.5 * x).tanh());
        (mw.ln() - ln_sinh(x), phi, mw * ra * rb / sinh)
    };
    Ok(ln_c - phi + ln_scaled_bessel_i(mu, z))
}
