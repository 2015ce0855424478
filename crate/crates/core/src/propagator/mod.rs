//! Euclidean-time oscillator kernels and the β-integrated resolvent.
//!
//! At fixed energy `E < 0` the problem in `(u⃗, v⃗)` is a pair of 2D
//! oscillators with `ω² = −E/2m` plus the constant shift `−a`, so the
//! evolution kernel is `e^{aβ/ħ}` times four 1D Mehler kernels. All kernels
//! here are evaluated in log space first; `exp` is only taken at the end.

mod kernel;
mod poles;
mod resolvent;

pub use kernel::{
    free_kernel_1d, ln_channel_kernel_2d, ln_oscillator_kernel_4d, ln_sho_kernel_1d, ln_sinh, oscillator_kernel_4d,
    sho_kernel_1d, KernelQuery, Point4,
};
pub use poles::{bound_bracket, divergence_onset, spectrum_from_poles, PoleSolution};
pub use resolvent::{decay_rate, resolvent_element, ResolventOptions, ResolventQuery, ResolventValue, Sector};

/// Logs below this are returned as an exact zero amplitude.
pub const LN_UNDERFLOW: f64 = -700.0;
/// Logs above this are reported as overflow instead of exponentiated.
pub const LN_OVERFLOW: f64 = 700.0;
