//! Radial Coulomb problem for `u(r) = r R(r)`:
//!
//! ```text
//! -(ħ²/2m) u'' + [ħ² ℓ'(ℓ'+1)/(2m r²) - Z e²/r] u = E u,   u(r_min) = u(r_max) = 0
//! ```
//!
//! Discretized on `r(t) = r_min + (r_max - r_min) t²` with the symmetric
//! three-point scheme for non-uniform grids, then symmetrized by the
//! diagonal node weights so that Sturm bisection applies.

use noncentral_numerics::SymTridiagonal;

use crate::{richardson, OracleError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    /// Inner Dirichlet point. `u(0) = 0` holds for every `ℓ' >= 0`, so the
    /// default 0 is exact; a positive value acts as a hard core and raises
    /// s-state energies by roughly `(ħ²/2m) u'(0)² r_min`.
    pub r_min: f64,
    /// `None` selects `40 n_max² a₀ / Z`, with `n_max = count + ℓ'` and
    /// `a₀ = ħ²/(m e²)`.
    pub r_max: Option<f64>,
    /// Interior nodes of the coarse grid; the fine grid uses twice as many.
    pub nodes: usize,
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self {
            r_min: 0.0,
            r_max: None,
            nodes: 6000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProblem {
    pub z: f64,
    pub l_eff: f64,
    pub count: usize,
    pub grid: RadialGrid,
    pub mass: f64,
    pub hbar: f64,
    pub e2: f64,
    pub tol: f64,
    /// Largest accepted `max|u|` over the outer 5% of the box, relative to
    /// the global maximum, for the highest requested state.
    pub tail_threshold: f64,
}

impl RadialProblem {
    /// Atomic units (`m = ħ = e² = 1`).
    pub fn new(z: f64, l_eff: f64, count: usize) -> Self {
        Self {
            z,
            l_eff,
            count,
            grid: RadialGrid::default(),
            mass: 1.0,
            hbar: 1.0,
            e2: 1.0,
            tol: 1e-5,
            tail_threshold: 1e-6,
        }
    }

    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.mass * self.e2)
    }

    pub fn r_max(&self) -> f64 {
        self.grid.r_max.unwrap_or_else(|| {
            let n_max = self.count as f64 + self.l_eff;
            40.0 * n_max * n_max * self.bohr_radius() / self.z
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    /// Richardson-extrapolated bound-state energies, ascending.
    pub energies: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub r_max: f64,
    /// Relative tail amplitude of the highest requested state (fine grid).
    pub tail: f64,
}

pub(crate) struct RadialMatrix {
    pub matrix: SymTridiagonal,
    pub radii: Vec<f64>,
    pub weights: Vec<f64>,
}

pub(crate) fn radial_matrix(p: &RadialProblem, r_max: f64, nodes: usize) -> Result<RadialMatrix, OracleError> {
    let r_min = p.grid.r_min;
    let span = r_max - r_min;
    let total = nodes + 1;
    let r_at = |i: usize| {
        let t = i as f64 / total as f64;
        r_min + span * t * t
    };
    let kin = p.hbar * p.hbar / (2.0 * p.mass);
    let centrifugal = kin * p.l_eff * (p.l_eff + 1.0);
    let coulomb = p.z * p.e2;

    let radii: Vec<f64> = (1..=nodes).map(r_at).collect();
    let mut weights = Vec::with_capacity(nodes);
    let mut stiff_diag = Vec::with_capacity(nodes);
    let mut coupling = Vec::with_capacity(nodes.saturating_sub(1));
    for i in 1..=nodes {
        let h_minus = r_at(i) - r_at(i - 1);
        let h_plus = r_at(i + 1) - r_at(i);
        weights.push(0.5 * (h_minus + h_plus));
        stiff_diag.push(kin * (1.0 / h_minus + 1.0 / h_plus));
        if i < nodes {
            coupling.push(-kin / h_plus);
        }
    }

    let diag: Vec<f64> = (0..nodes)
        .map(|i| {
            let r = radii[i];
            stiff_diag[i] / weights[i] + centrifugal / (r * r) - coulomb / r
        })
        .collect();
    let off: Vec<f64> = (0..nodes.saturating_sub(1))
        .map(|i| coupling[i] / (weights[i] * weights[i + 1]).sqrt())
        .collect();

    Ok(RadialMatrix {
        matrix: SymTridiagonal::new(diag, off)?,
        radii,
        weights,
    })
}

fn bound_levels(m: &SymTridiagonal, count: usize) -> Result<Vec<f64>, OracleError> {
    let found = m.sturm_count(0.0);
    if found < count {
        return Err(OracleError::TooFewBoundStates {
            found,
            requested: count,
        });
    }
    Ok(m.lowest_eigenvalues(count)?)
}

/// Relative amplitude of `u` in the outer 5% of the box.
fn tail_amplitude(rm: &RadialMatrix, energy: f64, r_max: f64) -> f64 {
    let y = rm.matrix.eigenvector(energy);
    let u: Vec<f64> = y
        .iter()
        .zip(&rm.weights)
        .map(|(yi, wi)| (yi / wi.sqrt()).abs())
        .collect();
    let peak = u.iter().cloned().fold(0.0, f64::max);
    let tail = u
        .iter()
        .zip(&rm.radii)
        .filter(|(_, &r)| r > 0.95 * r_max)
        .map(|(ui, _)| *ui)
        .fold(0.0, f64::max);
    if peak > 0.0 {
        tail / peak
    } else {
        f64::INFINITY
    }
}

/// Lowest `count` bound-state energies of the radial Coulomb problem.
pub fn radial_eigenvalues(p: &RadialProblem) -> Result<RadialSolution, OracleError> {
    if !(p.l_eff >= 0.0) || !p.l_eff.is_finite() {
        return Err(OracleError::InvalidInput(format!(
            "effective angular parameter must be >= 0, got {}",
            p.l_eff
        )));
    }
    if !(p.z > 0.0) || !(p.mass > 0.0) || !(p.hbar > 0.0) || !(p.e2 > 0.0) {
        return Err(OracleError::InvalidInput(
            "Z, mass, hbar and e2 must be positive".into(),
        ));
    }
    if p.count == 0 || p.grid.nodes < 100 {
        return Err(OracleError::InvalidInput(format!(
            "need count >= 1 and at least 100 nodes (count {}, nodes {})",
            p.count, p.grid.nodes
        )));
    }
    let r_max = p.r_max();
    if !(r_max > p.grid.r_min) || !(p.grid.r_min >= 0.0) {
        return Err(OracleError::InvalidInput(format!(
            "need 0 <= r_min < r_max, got r_min = {}, r_max = {r_max}",
            p.grid.r_min
        )));
    }

    let coarse_m = radial_matrix(p, r_max, p.grid.nodes)?;
    let fine_m = radial_matrix(p, r_max, 2 * p.grid.nodes)?;
    let coarse = bound_levels(&coarse_m.matrix, p.count)?;
    let fine = bound_levels(&fine_m.matrix, p.count)?;

    let tail = tail_amplitude(&fine_m, fine[p.count - 1], r_max);
    if tail > p.tail_threshold {
        return Err(OracleError::BoxTooSmall {
            r_max,
            tail,
            threshold: p.tail_threshold,
        });
    }

    let mut energies = Vec::with_capacity(p.count);
    for (&c, &f) in coarse.iter().zip(&fine) {
        let ext = richardson(c, f);
        let change = (ext - f).abs() / ext.abs();
        if change > p.tol {
            return Err(OracleError::NonConvergence {
                what: "radial eigenvalue",
                change,
                tol: p.tol,
            });
        }
        energies.push(ext);
    }

    Ok(RadialSolution {
        energies,
        coarse,
        fine,
        r_max,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hydrogen_s_states() {
        let sol = radial_eigenvalues(&RadialProblem::new(1.0, 0.0, 2)).unwrap();
        assert_relative_eq!(sol.energies[0], -0.5, max_relative = 1e-6);
        assert_relative_eq!(sol.energies[1], -0.125, max_relative = 1e-6);
    }

    #[test]
    fn charge_scaling() {
        let sol = radial_eigenvalues(&RadialProblem::new(2.0, 0.0, 1)).unwrap();
        assert_relative_eq!(sol.energies[0], -2.0, max_relative = 1e-6);
    }

    #[test]
    fn noninteger_l_eff() {
        // ℓ' = (√5 + √3)/2, n_r = 0 → -1/(2 (ℓ'+1)²)
        let l = (5f64.sqrt() + 3f64.sqrt()) / 2.0;
        let sol = radial_eigenvalues(&RadialProblem::new(1.0, l, 1)).unwrap();
        assert_relative_eq!(sol.energies[0], -0.5 / (l + 1.0).powi(2), max_relative = 1e-6);
    }

    #[test]
    fn unit_scaling() {
        // E scales as m e⁴/ħ²
        let mut p = RadialProblem::new(1.0, 1.0, 1);
        p.mass = 2.0;
        p.e2 = 1.5;
        p.hbar = 0.8;
        let sol = radial_eigenvalues(&p).unwrap();
        let unit = 2.0 * 1.5 * 1.5 / (0.8 * 0.8);
        assert_relative_eq!(sol.energies[0], -unit / 8.0, max_relative = 1e-6);
    }

    #[test]
    fn box_too_small() {
        let mut p = RadialProblem::new(1.0, 0.0, 3);
        p.grid.r_max = Some(15.0);
        assert!(matches!(
            radial_eigenvalues(&p).unwrap_err(),
            OracleError::BoxTooSmall { .. } | OracleError::TooFewBoundStates { .. }
        ));
    }

    #[test]
    fn rejects_negative_l_eff() {
        let p = RadialProblem::new(1.0, -0.5, 1);
        assert!(matches!(
            radial_eigenvalues(&p).unwrap_err(),
            OracleError::InvalidInput(_)
        ));
    }
}
