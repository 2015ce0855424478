//! `ln Γ` and the exponentially scaled modified Bessel function `e^{−x} I_μ(x)`
//! for real order `μ >= 0`, as needed by the channel-projected kernels.

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7), accurate to about 1e-15 relative.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // reflection keeps the approximation in its accurate range
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `ln(e^{−x} I_μ(x))` for `μ >= 0`, `x >= 0`. Returns `−∞` at `x = 0` when
/// `μ > 0`.
pub fn ln_scaled_bessel_i(mu: f64, x: f64) -> f64 {
    debug_assert!(mu >= 0.0 && x >= 0.0);
    if x == 0.0 {
        return if mu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if x > (2.0 * mu * mu).max(50.0) {
        ln_scaled_asymptotic(mu, x)
    } else {
        ln_series(mu, x) - x
    }
}

/// `ln I_μ(x)` from the ascending series, summed in log space.
fn ln_series(mu: f64, x: f64) -> f64 {
    let ln_half_x2 = 2.0 * (0.5 * x).ln();
    let mut ln_t = mu * (0.5 * x).ln() - ln_gamma(mu + 1.0);
    let mut terms = vec![ln_t];
    let mut peak = ln_t;
    let mut k = 0.0f64;
    loop {
        k += 1.0;
        ln_t += ln_half_x2 - k.ln() - (k + mu).ln();
        terms.push(ln_t);
        if ln_t > peak {
            peak = ln_t;
        } else if ln_t < peak - 40.0 {
            break;
        }
    }
    peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln()
}

/// Hankel expansion `e^{−x} I_μ(x) ~ (2πx)^{−½} Σ (−1)^k a_k(μ)/x^k`.
fn ln_scaled_asymptotic(mu: f64, x: f64) -> f64 {
    let four_mu2 = 4.0 * mu * mu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (four_mu2 - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() && k > 1 {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum.ln() - 0.5 * (2.0 * std::f64::consts::PI * x).ln()
}
