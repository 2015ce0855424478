//! Bound states of the Coulomb plus ring-shaped potential
//!
//! ```text
//! V(r, θ) = −Ze²/r + (ħ²/2m) (B + C cosθ)/(r² sin²θ)
//! ```
//!
//! Parabolic coordinates and `ξ = u²/4`, `η = v²/4` turn the fixed-energy
//! problem into two 2D oscillators of frequency `ω = √(−E/2m)`, which gives
//! the spectrum in closed form ([`spectrum`]) and an exactly known evolution
//! kernel ([`propagator`]). [`verify`] checks the closed form against the
//! independent finite-difference solvers of `noncentral-oracle`.

pub mod error;
pub mod potential;
pub mod propagator;
pub mod special;
pub mod spectrum;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use potential::{
    eval_potential_parabolic, eval_potential_spherical, eval_potential_uv, parabolic_to_spherical, parabolic_to_uv,
    spherical_to_parabolic, uv_to_parabolic, ParabolicPoint, PotentialParams, SphericalPoint, Units, UvPoint,
};
pub use propagator::{
    oscillator_kernel_4d, resolvent_element, sho_kernel_1d, spectrum_from_poles, KernelQuery, Point4, ResolventOptions,
    ResolventQuery, ResolventValue, Sector,
};
pub use spectrum::{
    ab_energy, energy_level, enumerate_levels, hartmann_energy, lambda_value, quantization_omega, AbLevel, AbParams,
    HartmannParams, Level, QuantumNumbers,
};
pub use verify::{verify_spectrum, VerificationReport, VerifyOptions};
