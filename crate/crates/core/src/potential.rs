//! The potential family
//!
//! ```text
//! V(r, θ) = -a/r + b/(r² sin²θ) + c cosθ/(r² sin²θ),
//! a = Z e²,  b = B ħ²/2m,  c = C ħ²/2m
//! ```
//!
//! and the coordinate chain spherical → cylindrical → parabolic `(ξ, η, φ)`
//! → `(u, v)` with `ξ = u²/4`, `η = v²/4`. In `(u, v)` the potential is
//!
//! ```text
//! V = 4/(u² + v²) · [-a + (b + c)/u² + (b - c)/v²]
//! ```
//!
//! so `(u² + v²)/4 · V` is a sum of a function of `u` and a function of `v`,
//! which is what makes the fixed-energy problem separate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default width of the excluded band around the z-axis, in `sin θ`.
pub const DEFAULT_AXIS_EPSILON: f64 = 1e-12;

/// Unit constants. The default is atomic units, `m = ħ = e² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub mass: f64,
    pub hbar: f64,
    /// Squared elementary charge `e²` (Gaussian-style, so `a = Z e²`).
    pub e2: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self::ATOMIC
    }
}

impl Units {
    pub const ATOMIC: Units = Units {
        mass: 1.0,
        hbar: 1.0,
        e2: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mass", self.mass), ("hbar", self.hbar), ("e2", self.e2)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `ħ²/2m`, the factor turning the dimensionless `B`, `C` into `b`, `c`.
    pub fn kinetic(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// Bohr radius `ħ²/(m e²)`.
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.mass * self.e2)
    }

    /// Hydrogen ground-state energy `-m e⁴/(2ħ²)`.
    pub fn hydrogen_ground_energy(&self) -> f64 {
        -self.mass * self.e2 * self.e2 / (2.0 * self.hbar * self.hbar)
    }
}

/// One member `(Z, B, C)` of the potential family.
///
/// The dimensionful couplings `a`, `b`, `c` are always derived on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    z: f64,
    b: f64,
    c: f64,
    units: Units,
    axis_epsilon: f64,
}

impl PotentialParams {
    /// Atomic units.
    pub fn new(z: f64, b: f64, c: f64) -> Result<Self> {
        Self::with_units(z, b, c, Units::ATOMIC)
    }

    pub fn with_units(z: f64, b: f64, c: f64, units: Units) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Z must be positive for bound states, got {z}"
            )));
        }
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidParams(format!(
                "B and C must be finite, got B = {b}, C = {c}"
            )));
        }
        units.validate()?;
        Ok(Self {
            z,
            b,
            c,
            units,
            axis_epsilon: DEFAULT_AXIS_EPSILON,
        })
    }

    /// Pure Coulomb, `B = C = 0`.
    pub fn coulomb(z: f64) -> Result<Self> {
        Self::new(z, 0.0, 0.0)
    }

    pub fn with_axis_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "axis epsilon must be >= 0, got {epsilon}"
            )));
        }
        self.axis_epsilon = epsilon;
        Ok(self)
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn axis_epsilon(&self) -> f64 {
        self.axis_epsilon
    }

    /// `a = Z e²`
    pub fn coulomb_strength(&self) -> f64 {
        self.z * self.units.e2
    }

    /// `b = B ħ²/2m`
    pub fn ring_strength(&self) -> f64 {
        self.b * self.units.kinetic()
    }

    /// `c = C ħ²/2m`
    pub fn cos_strength(&self) -> f64 {
        self.c * self.units.kinetic()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicPoint {
    pub xi: f64,
    pub eta: f64,
    pub phi: f64,
}

/// `u = 2√ξ`, `v = 2√η`. At the coordinate level both plane angles equal the
/// azimuth; they only become independent in the lifted 4D description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UvPoint {
    pub u: f64,
    pub v: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl SphericalPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Self {
        Self { r, theta, phi }
    }

    fn validate(&self) -> Result<()> {
        if !(self.r > 0.0) || !self.r.is_finite() {
            return Err(Error::Domain(format!("r must be positive, got {}", self.r)));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return Err(Error::Domain(format!("theta must lie in [0, pi], got {}", self.theta)));
        }
        if !self.phi.is_finite() {
            return Err(Error::Domain(format!("phi must be finite, got {}", self.phi)));
        }
        Ok(())
    }

    /// `(ρ, z)`
    pub fn cylindrical(&self) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (self.r * s, self.r * c)
    }
}

impl ParabolicPoint {
    fn validate(&self) -> Result<()> {
        if !(self.xi >= 0.0) || !(self.eta >= 0.0) || !self.xi.is_finite() || !self.eta.is_finite() {
            return Err(Error::Domain(format!(
                "parabolic coordinates must be non-negative, got xi = {}, eta = {}",
                self.xi, self.eta
            )));
        }
        if self.xi + self.eta == 0.0 {
            return Err(Error::Domain("xi + eta must be positive".into()));
        }
        Ok(())
    }
}

/// `V(r, θ)` in the spherical form.
pub fn eval_potential_spherical(params: &PotentialParams, p: &SphericalPoint) -> Result<f64> {
    p.validate()?;
    let (sin, cos) = p.theta.sin_cos();
    if sin.abs() <= params.axis_epsilon {
        return Err(Error::AxisSingularity {
            theta: p.theta,
            sin_theta: sin,
            epsilon: params.axis_epsilon,
        });
    }
    let r2s2 = p.r * p.r * sin * sin;
    Ok(-params.coulomb_strength() / p.r + params.ring_strength() / r2s2 + params.cos_strength() * cos / r2s2)
}

/// `ξ = (r - z)/2`, `η = (r + z)/2` with `z = r cosθ`.
///
/// Evaluated as `r sin²(θ/2)` and `r cos²(θ/2)`, which avoids the
/// cancellation in `r - z` near the positive axis (and in `r + z` near the
/// negative one).
pub fn spherical_to_parabolic(p: &SphericalPoint) -> Result<ParabolicPoint> {
    p.validate()?;
    let (s, c) = (0.5 * p.theta).sin_cos();
    Ok(ParabolicPoint {
        xi: p.r * s * s,
        eta: p.r * c * c,
        phi: p.phi,
    })
}

/// `r = ξ + η`, `cosθ = (η - ξ)/(ξ + η)`.
pub fn parabolic_to_spherical(p: &ParabolicPoint) -> Result<SphericalPoint> {
    p.validate()?;
    let r = p.xi + p.eta;
    // θ from both projections keeps full precision near the poles
    let theta = (2.0 * (p.xi * p.eta).sqrt()).atan2(p.eta - p.xi);
    Ok(SphericalPoint { r, theta, phi: p.phi })
}

pub fn parabolic_to_uv(p: &ParabolicPoint) -> Result<UvPoint> {
    if !(p.xi >= 0.0) || !(p.eta >= 0.0) {
        return Err(Error::Domain(format!(
            "parabolic coordinates must be non-negative, got xi = {}, eta = {}",
            p.xi, p.eta
        )));
    }
    Ok(UvPoint {
        u: 2.0 * p.xi.sqrt(),
        v: 2.0 * p.eta.sqrt(),
        phi1: p.phi,
        phi2: p.phi,
    })
}

/// `ξ = u²/4`, `η = v²/4`; the azimuth is taken from `phi1`.
pub fn uv_to_parabolic(p: &UvPoint) -> Result<ParabolicPoint> {
    if !(p.u >= 0.0) || !(p.v >= 0.0) {
        return Err(Error::Domain(format!(
            "u and v must be non-negative, got u = {}, v = {}",
            p.u, p.v
        )));
    }
    Ok(ParabolicPoint {
        xi: 0.25 * p.u * p.u,
        eta: 0.25 * p.v * p.v,
        phi: p.phi1,
    })
}

/// `V(ξ, η) = -a/(ξ+η) + b/(4ξη) + c(η-ξ)/(4ηξ(η+ξ))`.
pub fn eval_potential_parabolic(params: &PotentialParams, p: &ParabolicPoint) -> Result<f64> {
    p.validate()?;
    if p.xi == 0.0 || p.eta == 0.0 {
        return Err(Error::RingSingularity { xi: p.xi, eta: p.eta });
    }
    let sum = p.xi + p.eta;
    let prod4 = 4.0 * p.xi * p.eta;
    Ok(-params.coulomb_strength() / sum
        + params.ring_strength() / prod4
        + params.cos_strength() * (p.eta - p.xi) / (prod4 * sum))
}

/// `V = 4/(u² + v²) · [-a + (b + c)/u² + (b - c)/v²]`.
pub fn eval_potential_uv(params: &PotentialParams, p: &UvPoint) -> Result<f64> {
    if !(p.u > 0.0) || !(p.v > 0.0) {
        return Err(Error::RingSingularity {
            xi: 0.25 * p.u * p.u,
            eta: 0.25 * p.v * p.v,
        });
    }
    let (u2, v2) = (p.u * p.u, p.v * p.v);
    let (b, c) = (params.ring_strength(), params.cos_strength());
    Ok(4.0 / (u2 + v2) * (-params.coulomb_strength() + (b + c) / u2 + (b - c) / v2))
}

/// Effective squared angular momenta of the two oscillator planes,
/// `p_φ1² = p_φ² + 2m(b + c)` and `p_φ2² = p_φ² + 2m(b - c)`, for `p_φ = ν ħ`.
///
/// Returned in units of `ħ²`, i.e. `(ν² + B + C, ν² + B - C)`.
pub fn plane_angular_momenta_sq(params: &PotentialParams, nu: u32) -> (f64, f64) {
    let nu2 = f64::from(nu).powi(2);
    (nu2 + params.b + params.c, nu2 + params.b - params.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn spherical_examples() {
        let p = PotentialParams::new(1.0, 2.0, 5.0).unwrap();
        // -1/2 + 1/(4·1) + 0
        let v = eval_potential_spherical(&p, &SphericalPoint::new(2.0, FRAC_PI_2, 0.0)).unwrap();
        assert_abs_diff_eq!(v, -0.25, epsilon = 1e-15);

        let coulomb = PotentialParams::coulomb(1.0).unwrap();
        for theta in [0.3, 1.0, 2.5] {
            let v = eval_potential_spherical(&coulomb, &SphericalPoint::new(1.0, theta, 0.0)).unwrap();
            assert_abs_diff_eq!(v, -1.0, epsilon = 1e-15);
        }

        let pc = PotentialParams::new(1.0, 0.0, 1.0).unwrap();
        let v = eval_potential_spherical(&pc, &SphericalPoint::new(1.0, FRAC_PI_2, 0.0)).unwrap();
        assert_abs_diff_eq!(v, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn spherical_errors() {
        let p = PotentialParams::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            eval_potential_spherical(&p, &SphericalPoint::new(1.0, 0.0, 0.0)),
            Err(Error::AxisSingularity { .. })
        ));
        assert!(matches!(
            eval_potential_spherical(&p, &SphericalPoint::new(1.0, PI, 0.0)),
            Err(Error::AxisSingularity { .. })
        ));
        assert!(matches!(
            eval_potential_spherical(&p, &SphericalPoint::new(0.0, 1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_potential_spherical(&p, &SphericalPoint::new(-1.0, 1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        // a wider band is honoured
        let wide = p.with_axis_epsilon(0.1).unwrap();
        assert!(matches!(
            eval_potential_spherical(&wide, &SphericalPoint::new(1.0, 0.05, 0.0)),
            Err(Error::AxisSingularity { .. })
        ));
        assert!(eval_potential_spherical(&p, &SphericalPoint::new(1.0, 0.05, 0.0)).is_ok());
    }

    #[test]
    fn params_validation() {
        assert!(PotentialParams::new(0.0, 0.0, 0.0).is_err());
        assert!(PotentialParams::new(-1.0, 0.0, 0.0).is_err());
        assert!(PotentialParams::new(1.0, f64::NAN, 0.0).is_err());
        let bad_units = Units {
            mass: 0.0,
            ..Units::ATOMIC
        };
        assert!(PotentialParams::with_units(1.0, 0.0, 0.0, bad_units).is_err());
    }

    #[test]
    fn derived_couplings_follow_units() {
        let units = Units {
            mass: 2.0,
            hbar: 3.0,
            e2: 0.5,
        };
        let p = PotentialParams::with_units(4.0, 2.0, -1.0, units).unwrap();
        assert_abs_diff_eq!(p.coulomb_strength(), 2.0);
        assert_abs_diff_eq!(p.ring_strength(), 2.0 * 9.0 / 4.0);
        assert_abs_diff_eq!(p.cos_strength(), -9.0 / 4.0);
    }

    #[test]
    fn parabolic_examples() {
        let on_axis = spherical_to_parabolic(&SphericalPoint::new(2.0, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(on_axis.xi, 0.0);
        assert_abs_diff_eq!(on_axis.eta, 2.0);

        let eq = spherical_to_parabolic(&SphericalPoint::new(5.0, FRAC_PI_2, 1.0)).unwrap();
        assert_abs_diff_eq!(eq.xi, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(eq.eta, 2.5, epsilon = 1e-15);
        assert_eq!(eq.phi, 1.0);

        let coulomb = PotentialParams::coulomb(1.0).unwrap();
        let pp = ParabolicPoint {
            xi: 1.0,
            eta: 1.0,
            phi: 0.0,
        };
        assert_abs_diff_eq!(eval_potential_parabolic(&coulomb, &pp).unwrap(), -0.5);

        // same point as the first spherical example
        let ring = PotentialParams::new(1.0, 2.0, 5.0).unwrap();
        assert_abs_diff_eq!(eval_potential_parabolic(&ring, &pp).unwrap(), -0.25, epsilon = 1e-15);
    }

    #[test]
    fn uv_examples() {
        let uv = |xi: f64| parabolic_to_uv(&ParabolicPoint { xi, eta: 1.0, phi: 0.0 }).unwrap().u;
        assert_eq!(uv(1.0), 2.0);
        assert_eq!(uv(2.25), 3.0);
        assert_eq!(uv(0.0), 0.0);
    }

    #[test]
    fn ring_singularity() {
        let p = PotentialParams::new(1.0, 1.0, 0.0).unwrap();
        let pp = ParabolicPoint {
            xi: 0.0,
            eta: 1.0,
            phi: 0.0,
        };
        assert!(matches!(
            eval_potential_parabolic(&p, &pp),
            Err(Error::RingSingularity { .. })
        ));
        assert!(matches!(
            parabolic_to_spherical(&ParabolicPoint {
                xi: 0.0,
                eta: 0.0,
                phi: 0.0
            }),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn uv_potential_fixes_prefactor_convention() {
        // 4/(u² + v²) reproduces the spherical value; 4/(u + v) does not.
        let p = PotentialParams::new(1.3, 2.0, 0.7).unwrap();
        let s = SphericalPoint::new(2.7, 1.1, 0.4);
        let uv = parabolic_to_uv(&spherical_to_parabolic(&s).unwrap()).unwrap();
        let v_sph = eval_potential_spherical(&p, &s).unwrap();
        assert_relative_eq!(eval_potential_uv(&p, &uv).unwrap(), v_sph, max_relative = 1e-12);
        let (b, c) = (p.ring_strength(), p.cos_strength());
        let linear = 4.0 / (uv.u + uv.v) * (-p.coulomb_strength() + (b + c) / (uv.u * uv.u) + (b - c) / (uv.v * uv.v));
        assert!((linear - v_sph).abs() > 1e-3);
    }

    fn sph_strategy() -> impl Strategy<Value = SphericalPoint> {
        (0.01f64..50.0, 1e-3f64..(PI - 1e-3), 0.0f64..(2.0 * PI)).prop_map(|(r, theta, phi)| SphericalPoint {
            r,
            theta,
            phi,
        })
    }

    proptest! {
        #[test]
        fn parabolic_identities(s in sph_strategy()) {
            let p = spherical_to_parabolic(&s).unwrap();
            let (_, z) = s.cylindrical();
            prop_assert!((p.xi + p.eta - s.r).abs() <= 1e-12 * s.r);
            prop_assert!((p.eta - p.xi - z).abs() <= 1e-12 * s.r);
        }

        #[test]
        fn round_trips(s in sph_strategy()) {
            let p = spherical_to_parabolic(&s).unwrap();
            let back = parabolic_to_spherical(&p).unwrap();
            prop_assert!((back.r - s.r).abs() <= 1e-12 * s.r);
            prop_assert!((back.theta - s.theta).abs() <= 1e-12);
            prop_assert_eq!(back.phi, s.phi);

            let uv = parabolic_to_uv(&p).unwrap();
            let p2 = uv_to_parabolic(&uv).unwrap();
            prop_assert!((p2.xi - p.xi).abs() <= 1e-12 * s.r);
            prop_assert!((p2.eta - p.eta).abs() <= 1e-12 * s.r);
        }

        #[test]
        fn representation_independence(s in sph_strategy(),
                                        z in 0.1f64..5.0, b in -2.0f64..6.0, c in -3.0f64..3.0) {
            let params = PotentialParams::new(z, b, c).unwrap();
            let v_sph = eval_potential_spherical(&params, &s).unwrap();
            let p = spherical_to_parabolic(&s).unwrap();
            let v_par = eval_potential_parabolic(&params, &p).unwrap();
            let v_uv = eval_potential_uv(&params, &parabolic_to_uv(&p).unwrap()).unwrap();
            let scale = v_sph.abs().max(params.coulomb_strength() / s.r);
            prop_assert!((v_par - v_sph).abs() <= 1e-12 * scale);
            prop_assert!((v_uv - v_sph).abs() <= 1e-12 * scale);
        }

        #[test]
        fn fixed_energy_problem_separates(u in 0.05f64..5.0, v in 0.05f64..5.0,
                                          u2 in 0.05f64..5.0, v2 in 0.05f64..5.0) {
            // (u²+v²)/4 · V(u, v) = f(u) + g(v): the mixed difference vanishes.
            let params = PotentialParams::new(1.0, 3.0, 1.0).unwrap();
            let w = |u: f64, v: f64| {
                let pt = UvPoint { u, v, phi1: 0.0, phi2: 0.0 };
                0.25 * (u * u + v * v) * eval_potential_uv(&params, &pt).unwrap()
            };
            let mixed = w(u, v) - w(u2, v) - w(u, v2) + w(u2, v2);
            let scale = w(u, v).abs() + w(u2, v2).abs() + w(u2, v).abs() + w(u, v2).abs();
            prop_assert!(mixed.abs() <= 1e-12 * scale);
        }
    }
}
