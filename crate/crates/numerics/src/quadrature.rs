//! Globally adaptive 15-point Gauss–Kronrod quadrature.
//!
//! The driver keeps every subinterval in a max-heap keyed on its error
//! estimate and bisects the worst one until the summed error estimate
//! drops below `max(abs_tol, rel_tol * |I|)` or the evaluation budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (the 7-point Gauss rule).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of integrand evaluations.
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_evals: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
    pub intervals: usize,
}

impl QuadResult {
    pub fn rel_err(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_err
        } else {
            self.abs_err / self.value.abs()
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("evaluation budget of {max_evals} exhausted (value {value:e}, error estimate {abs_err:e})")]
    BudgetExhausted { max_evals: usize, value: f64, abs_err: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("need at least two increasing breakpoints")]
    BadBreakpoints,
}

/// One application of the G7/K15 pair on `[a, b]`.
///
/// Returns the Kronrod estimate and a QUADPACK-style error estimate.
pub fn gauss_kronrod_15<F>(f: &F, a: f64, b: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_k = WGK[7] * f_center;
    let mut res_g = WG[3] * f_center;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half.abs();
    let res_k_scaled = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;

    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (res_k_scaled, err)
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrate `f` over `[breakpoints[0], breakpoints[last]]`.
///
/// Interior breakpoints seed the initial partition; they are the place to
/// put known peaks or scale changes of the integrand.
pub fn integrate<F>(f: F, breakpoints: &[f64], opts: &QuadOptions) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(QuadError::BadBreakpoints);
    }

    let mut evals = 0usize;
    let mut heap = BinaryHeap::with_capacity(2 * breakpoints.len());
    let mut frozen: Vec<Segment> = Vec::new();

    let eval_segment = |a: f64, b: f64, evals: &mut usize| -> Result<Segment, QuadError> {
        let (value, err) = gauss_kronrod_15(&f, a, b);
        *evals += 15;
        if !value.is_finite() || !err.is_finite() {
            return Err(QuadError::NonFinite { x: 0.5 * (a + b) });
        }
        Ok(Segment { a, b, value, err })
    };

    for w in breakpoints.windows(2) {
        heap.push(eval_segment(w[0], w[1], &mut evals)?);
    }

    loop {
        let value: f64 = heap.iter().chain(frozen.iter()).map(|s| s.value).sum();
        let err: f64 = heap.iter().chain(frozen.iter()).map(|s| s.err).sum();
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        let intervals = heap.len() + frozen.len();

        if err <= target || heap.is_empty() {
            return Ok(QuadResult {
                value,
                abs_err: err,
                evals,
                intervals,
            });
        }
        if evals + 30 > opts.max_evals {
            return Err(QuadError::BudgetExhausted {
                max_evals: opts.max_evals,
                value,
                abs_err: err,
            });
        }

        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        // Interval at the resolution limit of f64: keep it as is.
        if !(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) < 100.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE)
        {
            frozen.push(worst);
            continue;
        }
        heap.push(eval_segment(worst.a, mid, &mut evals)?);
        heap.push(eval_segment(mid, worst.b, &mut evals)?);
    }
}
