//! Small numerical kernels shared by the spectrum, propagator and oracle code.
//!
//! Everything here is generic numerics with no physics knowledge: adaptive
//! Gauss–Kronrod quadrature, bracketed root finding, and a symmetric
//! tridiagonal eigensolver based on Sturm-sequence bisection.

pub mod quadrature;
pub mod roots;
pub mod tridiag;

pub use quadrature::{gauss_kronrod_15, integrate, QuadError, QuadOptions, QuadResult};
pub use roots::{brent, RootError, RootOptions};
pub use tridiag::{SymTridiagonal, TridiagError};
