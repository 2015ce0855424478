//! Angular equation in `x = cosθ`:
//!
//! ```text
//! -((1 - x²) Θ')' + (ν² + B + C x)/(1 - x²) Θ = ℓ'(ℓ'+1) Θ
//! ```
//!
//! Solved in the equivalent weighted form in θ,
//!
//! ```text
//! -(sinθ Θ')' + (ν² + B + C cosθ)/sinθ Θ = ℓ'(ℓ'+1) sinθ Θ
//! ```
//!
//! with cell-centred second-order differences on `θ_i = (i + ½) π/n`, i.e.
//! the nodes `x_i = cos θ_i` are offset half a step from the poles and
//! cluster towards `x = ±1`. The flux weight `sinθ` vanishes on the two
//! boundary faces, so the singular endpoints never enter the stencil. Near a
//! pole the solutions behave as `θ^μ`, `μ = √(ν² + B ± C)`; on a grid uniform
//! in θ the eigenvalue error is `O(h²)` for `μ = 0` or `μ >= 1` and
//! `O(h^{2μ})` in between, with further terms at multiples of `2μ`. The
//! eigenvalues on grids `n, 2n, 4n, …` are combined by
//! [`richardson_known_orders`] using those exponents, which follow from the
//! inputs alone.

use noncentral_numerics::SymTridiagonal;

use crate::{l_eff_from_separation, richardson_known_orders, OracleError};

#[derive(Debug, Clone, PartialEq)]
pub struct AngularProblem {
    pub b: f64,
    pub c: f64,
    pub nu: u32,
    /// Interior nodes of the coarsest grid; each further grid doubles it.
    pub grid_n: usize,
    /// Upper bound on the number of grids.
    pub max_grids: usize,
    pub count: usize,
    /// Largest accepted relative change between the fine-grid value and the
    /// extrapolated one.
    pub tol: f64,
}

impl AngularProblem {
    pub fn new(b: f64, c: f64, nu: u32, count: usize) -> Self {
        Self {
            b,
            c,
            nu,
            grid_n: 2000,
            max_grids: 6,
            count,
            tol: 1e-4,
        }
    }

    fn exponent_sums(&self) -> (f64, f64) {
        let nu2 = f64::from(self.nu).powi(2);
        (nu2 + self.b + self.c, nu2 + self.b - self.c)
    }

    /// `ν² + B − C == 0` or `ν² + B + C == 0`: one boundary exponent vanishes.
    pub fn boundary_marginal(&self) -> bool {
        let (plus, minus) = self.exponent_sums();
        (plus == 0.0 || minus == 0.0) && !(self.b == 0.0 && self.c == 0.0)
    }

    /// Exponents of the discretisation error in `h`, ascending: multiples of
    /// `2μ` below 2 for each fractional pole exponent, then 2 and 4.
    pub fn error_exponents(&self) -> Vec<f64> {
        let (plus, minus) = self.exponent_sums();
        let mut out = vec![2.0, 4.0];
        for mu in [plus.sqrt(), minus.sqrt()] {
            if mu > 0.0 && mu < 1.0 {
                let mut k = 1.0;
                while 2.0 * k * mu < 2.0 - 1e-9 {
                    out.push(2.0 * k * mu);
                    k += 1.0;
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularSolution {
    /// Extrapolated separation constants `ℓ'(ℓ'+1)`, ascending.
    pub separation: Vec<f64>,
    /// Node counts of the grids used, coarsest first.
    pub grids: Vec<usize>,
    /// Eigenvalues on the finest grid.
    pub fine: Vec<f64>,
    /// Error exponents eliminated by the extrapolation.
    pub exponents: Vec<f64>,
    /// `ℓ'` for each extrapolated separation constant.
    pub l_eff: Vec<f64>,
    pub boundary_marginal: bool,
}

pub(crate) fn angular_matrix(b: f64, c: f64, nu: u32, n: usize) -> Result<SymTridiagonal, OracleError> {
    let h = std::f64::consts::PI / n as f64;
    let nu2 = f64::from(nu).powi(2);
    let inv_h2 = 1.0 / (h * h);
    // face k sits at θ = k h; the flux weight sinθ is exactly zero on the poles
    let face = |k: usize| {
        if k == 0 || k == n {
            0.0
        } else {
            (k as f64 * h).sin()
        }
    };

    let mut weights = Vec::with_capacity(n);
    let mut stiff = Vec::with_capacity(n);
    for i in 0..n {
        let theta = (i as f64 + 0.5) * h;
        let (sin, cos) = theta.sin_cos();
        weights.push(sin);
        stiff.push((face(i) + face(i + 1)) * inv_h2 + (nu2 + b + c * cos) / sin);
    }
    let diag = stiff.iter().zip(&weights).map(|(s, w)| s / w).collect();
    let off = (0..n.saturating_sub(1))
        .map(|i| -face(i + 1) * inv_h2 / (weights[i] * weights[i + 1]).sqrt())
        .collect();
    Ok(SymTridiagonal::new(diag, off)?)
}

/// Lowest `count` separation constants of the angular operator.
pub fn angular_eigenvalues(p: &AngularProblem) -> Result<AngularSolution, OracleError> {
    let (plus, minus) = p.exponent_sums();
    if plus < 0.0 || minus < 0.0 || !plus.is_finite() || !minus.is_finite() {
        return Err(OracleError::InvalidChannel {
            nu: p.nu,
            b: p.b,
            c: p.c,
        });
    }
    if p.grid_n < 200 {
        return Err(OracleError::InvalidInput(format!(
            "angular grid needs at least 200 nodes, got {}",
            p.grid_n
        )));
    }
    if p.count == 0 || p.count > p.grid_n / 4 {
        return Err(OracleError::InvalidInput(format!(
            "cannot resolve {} angular eigenvalues on {} nodes",
            p.count, p.grid_n
        )));
    }

    let mut exponents = p.error_exponents();
    let n_grids = (exponents.len() + 1).clamp(2, p.max_grids.max(2));
    exponents.truncate(n_grids - 1);
    let grids: Vec<usize> = (0..n_grids).map(|k| p.grid_n << k).collect();
    let per_grid = grids
        .iter()
        .map(|&n| Ok(angular_matrix(p.b, p.c, p.nu, n)?.lowest_eigenvalues(p.count)?))
        .collect::<Result<Vec<Vec<f64>>, OracleError>>()?;

    let mut separation = Vec::with_capacity(p.count);
    for j in 0..p.count {
        let values: Vec<f64> = per_grid.iter().map(|g| g[j]).collect();
        let (ext, last) = richardson_known_orders(&values, &exponents);
        let change = last.abs() / ext.abs().max(1.0);
        if change > p.tol {
            return Err(OracleError::NonConvergence {
                what: "angular eigenvalue",
                change,
                tol: p.tol,
            });
        }
        separation.push(ext);
    }
    let l_eff = separation.iter().map(|&s| l_eff_from_separation(s)).collect();

    Ok(AngularSolution {
        separation,
        grids,
        fine: per_grid.last().cloned().unwrap_or_default(),
        exponents,
        l_eff,
        boundary_marginal: p.boundary_marginal(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_spectrum() {
        // ν = 0, no ring terms: ℓ(ℓ+1) = 0, 2, 6, 12
        let sol = angular_eigenvalues(&AngularProblem::new(0.0, 0.0, 0, 4)).unwrap();
        for (l, s) in sol.separation.iter().enumerate() {
            let l = l as f64;
            assert_relative_eq!(*s, l * (l + 1.0), epsilon = 1e-6, max_relative = 1e-6);
        }
    }

    #[test]
    fn associated_legendre_nu1() {
        let sol = angular_eigenvalues(&AngularProblem::new(0.0, 0.0, 1, 2)).unwrap();
        assert_relative_eq!(sol.separation[0], 2.0, max_relative = 1e-6);
        assert_relative_eq!(sol.separation[1], 6.0, max_relative = 1e-6);
    }

    #[test]
    fn ring_term_with_integer_exponent() {
        // B = 1, ν = 0: exponents sqrt(1) on both ends, ℓ' = 1.
        let sol = angular_eigenvalues(&AngularProblem::new(1.0, 0.0, 0, 1)).unwrap();
        assert_relative_eq!(sol.separation[0], 2.0, max_relative = 1e-6);
        assert_relative_eq!(sol.l_eff[0], 1.0, max_relative = 1e-6);
    }

    #[test]
    fn noninteger_exponents() {
        // B = 3, C = 1, ν = 1 → 5.9205493 (frozen from the independent
        // endpoint-exponent analysis: ℓ' = (√5 + √3)/2).
        let sol = angular_eigenvalues(&AngularProblem::new(3.0, 1.0, 1, 1)).unwrap();
        assert_relative_eq!(sol.separation[0], 5.920_549_3, max_relative = 1e-6);
    }

    #[test]
    fn extrapolation_improves_on_fine_grid() {
        let sol = angular_eigenvalues(&AngularProblem::new(3.0, 1.0, 1, 1)).unwrap();
        let exact = {
            let l = (5f64.sqrt() + 3f64.sqrt()) / 2.0;
            l * (l + 1.0)
        };
        assert!((sol.separation[0] - exact).abs() < (sol.fine[0] - exact).abs());
    }

    #[test]
    fn fractional_boundary_exponent() {
        // ν = 1, B = -0.5, C = 0.3: exponents √0.8 and √0.2, error ~ h^0.89
        let sol = angular_eigenvalues(&AngularProblem::new(-0.5, 0.3, 1, 2)).unwrap();
        for (j, l) in sol.l_eff.iter().enumerate() {
            let expected = j as f64 + 0.5 * (0.8f64.sqrt() + 0.2f64.sqrt());
            assert_relative_eq!(*l, expected, max_relative = 1e-6);
        }
        assert_relative_eq!(sol.exponents[0], 2.0 * 0.2f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn invalid_channel() {
        let err = angular_eigenvalues(&AngularProblem::new(0.0, 1.0, 0, 1)).unwrap_err();
        assert!(matches!(err, OracleError::InvalidChannel { nu: 0, .. }));
    }

    #[test]
    fn grid_too_small() {
        let mut p = AngularProblem::new(0.0, 0.0, 0, 1);
        p.grid_n = 100;
        assert!(matches!(
            angular_eigenvalues(&p).unwrap_err(),
            OracleError::InvalidInput(_)
        ));
    }

    #[test]
    fn marginal_flag() {
        assert!(AngularProblem::new(1.0, 1.0, 0, 1).boundary_marginal());
        assert!(!AngularProblem::new(0.0, 0.0, 0, 1).boundary_marginal());
        assert!(!AngularProblem::new(3.0, 1.0, 1, 1).boundary_marginal());
    }
}
