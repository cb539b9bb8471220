//! Modified Bessel functions of the first kind, in log form, and the ratio
//! `I_nu(x) / I_(nu-1)(x)`.

use std::f64::consts::PI;

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

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// ln I_nu(x) for nu > -1 and x > 0.
pub fn ln_bessel_i(nu: f64, x: f64) -> f64 {
    debug_assert!(nu > -1.0 && x > 0.0);
    if x > 50.0 && x > 4.0 * nu * nu {
        ln_bessel_i_asymptotic(nu, x)
    } else {
        ln_bessel_i_series(nu, x)
    }
}

/// Power series, summed in log space so large arguments do not overflow.
fn ln_bessel_i_series(nu: f64, x: f64) -> f64 {
    let quarter_sq = 0.25 * x * x;
    // Terms t_k = (x^2/4)^k / (k! (nu+1)_k) relative to t_0; find the
    // largest term first so the sum can be scaled by it.
    let peak = {
        // t_{k+1}/t_k = q / ((k+1)(k+nu+1)) drops below 1 past the root
        let b = nu + 2.0;
        let c = nu + 1.0 - quarter_sq;
        let root = (-b + (b * b - 4.0 * c).max(0.0).sqrt()) / 2.0;
        root.max(0.0).ceil() as usize
    };
    let mut ln_peak = 0.0;
    for k in 0..peak {
        let k = k as f64;
        ln_peak += quarter_sq.ln() - ((k + 1.0) * (k + nu + 1.0)).ln();
    }
    let mut sum = 1.0;
    // downward from the peak
    let mut term = 1.0;
    for k in (0..peak).rev() {
        let kf = k as f64;
        term *= (kf + 1.0) * (kf + nu + 1.0) / quarter_sq;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    // upward from the peak
    let mut term = 1.0;
    let mut k = peak as f64;
    loop {
        term *= quarter_sq / ((k + 1.0) * (k + nu + 1.0));
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
        k += 1.0;
    }
    nu * (0.5 * x).ln() - ln_gamma(nu + 1.0) + ln_peak + sum.ln()
}

/// Hankel expansion `I_nu(x) ~ e^x / sqrt(2 pi x) sum_k (-1)^k a_k(nu) / x^k`.
fn ln_bessel_i_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (kf * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    x - 0.5 * (2.0 * PI * x).ln() + sum.ln()
}

/// `I_nu(x) / I_(nu-1)(x)` for nu > 0, x >= 0, by the Gauss continued
/// fraction `1 / (2nu/x + 1 / (2(nu+1)/x + ...))` (modified Lentz).
pub fn bessel_i_ratio(nu: f64, x: f64) -> f64 {
    debug_assert!(nu > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    const TINY: f64 = 1e-300;
    let mut f = 2.0 * nu / x;
    let mut c = f;
    let mut d = 0.0;
    let max_iter = 1000 + 20 * x.ceil() as usize;
    for j in 1..max_iter {
        let b = 2.0 * (nu + j as f64) / x;
        d += b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + 1.0 / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}
