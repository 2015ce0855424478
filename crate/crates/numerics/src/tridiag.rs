//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
//!
//! The Sturm count of `T - x I` is the number of negative pivots in its
//! LDLᵀ factorization, which equals the number of eigenvalues below `x`.
//! Bisection on that count isolates any single eigenvalue without touching
//! the others, which is what the finite-difference oracles need: a handful
//! of the lowest eigenvalues of matrices with thousands of rows.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TridiagError {
    #[error("off-diagonal has length {off}, expected {expected}")]
    ShapeMismatch { off: usize, expected: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("matrix entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("requested {requested} eigenvalues from a matrix of order {order}")]
    TooMany { requested: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self, TridiagError> {
        if diag.is_empty() {
            return Err(TridiagError::Empty);
        }
        if off.len() + 1 != diag.len() {
            return Err(TridiagError::ShapeMismatch {
                off: off.len(),
                expected: diag.len() - 1,
            });
        }
        if let Some(index) = diag.iter().chain(off.iter()).position(|v| !v.is_finite()) {
            return Err(TridiagError::NonFinite { index });
        }
        Ok(Self { diag, off })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off_diag(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let q_safe = if q.abs() < guard { guard.copysign(q) } else { q };
            let e = self.off[i - 1];
            q = (self.diag[i] - x) - e * e / q_safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> Result<f64, TridiagError> {
        if k >= self.order() {
            return Err(TridiagError::TooMany {
                requested: k + 1,
                order: self.order(),
            });
        }
        let (lo, hi) = self.gershgorin();
        Ok(self.bisect(k, lo, hi))
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>, TridiagError> {
        if count > self.order() {
            return Err(TridiagError::TooMany {
                requested: count,
                order: self.order(),
            });
        }
        let (lo, hi) = self.gershgorin();
        let mut out = Vec::with_capacity(count);
        let mut floor = lo;
        for k in 0..count {
            let v = self.bisect(k, floor, hi);
            out.push(v);
            floor = v;
        }
        Ok(out)
    }

    fn bisect(&self, k: usize, lo: f64, hi: f64) -> f64 {
        let pad = 1e-12 * (lo.abs().max(hi.abs())).max(1.0);
        let mut a = lo - pad;
        let mut b = hi + pad;
        for _ in 0..2000 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if (b - a) <= 2.0 * f64::EPSILON * (a.abs().max(b.abs())) {
                break;
            }
            if self.sturm_count(mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Unit-norm eigenvector for a (converged) eigenvalue, by inverse iteration.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.order();
        let scale = {
            let (lo, hi) = self.gershgorin();
            lo.abs().max(hi.abs()).max(1.0)
        };
        let shift = eigenvalue + 64.0 * f64::EPSILON * scale.min(eigenvalue.abs().max(1.0));
        let tiny = f64::EPSILON * scale;

        // LU of (T - shift I) without pivoting; the factors are reused.
        let mut pivots = vec![0.0; n];
        let mut mult = vec![0.0; n.saturating_sub(1)];
        pivots[0] = self.diag[0] - shift;
        for i in 1..n {
            let p = if pivots[i - 1].abs() < tiny {
                tiny.copysign(pivots[i - 1])
            } else {
                pivots[i - 1]
            };
            pivots[i - 1] = p;
            mult[i - 1] = self.off[i - 1] / p;
            pivots[i] = self.diag[i] - shift - mult[i - 1] * self.off[i - 1];
        }
        if pivots[n - 1].abs() < tiny {
            pivots[n - 1] = tiny.copysign(pivots[n - 1]);
        }

        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * ((i % 7) as f64)).collect();
        for _ in 0..4 {
            for i in 1..n {
                x[i] -= mult[i - 1] * x[i - 1];
            }
            x[n - 1] /= pivots[n - 1];
            for i in (0..n - 1).rev() {
                x[i] = (x[i] - self.off[i] * x[i + 1]) / pivots[i];
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }
}
