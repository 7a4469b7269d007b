//! Special functions: Gamma, generalized Laguerre, integer-order Bessel J.
//!
//! Gamma uses a Lanczos approximation, Laguerre the upward three-term
//! recurrence, Bessel J the Miller downward recurrence normalized with
//! J₀ + 2ΣJ₂ₖ = 1. All are plain f64 routines tested against their
//! defining recurrences and closed values.

use crate::error::{CoreError, Result};
use std::f64::consts::PI;

// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function. Non-positive integers are poles.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(CoreError::DomainError(format!("Gamma pole at {x}")));
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π/sin(πx)
        return Ok(PI / ((PI * x).sin() * gamma_fn(1.0 - x)?));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc)
}

/// log Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(CoreError::DomainError(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let xm = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (xm + 0.5) * t.ln() - t + acc.ln())
}

/// Generalized Laguerre polynomial L_n^{(α)}(x).
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    *laguerre_all(n, alpha, x).last().unwrap()
}

/// L_k^{(α)}(x) for all k = 0..=n_max by upward recurrence.
pub fn laguerre_all(n_max: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(1.0 + alpha - x);
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// Bessel J_ν(x) for integer ν (any sign) and real x (any sign),
/// via J₋ν = (−1)^ν Jν and Jν(−x) = (−1)^ν Jν(x).
pub fn bessel_j(nu: i64, x: f64) -> f64 {
    let mut sign = 1.0;
    let mut n = nu;
    let mut x = x;
    if n < 0 {
        n = -n;
        if n % 2 == 1 {
            sign = -sign;
        }
    }
    if x < 0.0 {
        x = -x;
        if n % 2 == 1 {
            sign = -sign;
        }
    }
    sign * bessel_j_all(n as usize, x)[n as usize]
}

/// J_k(x) for k = 0..=nu_max, x ≥ 0, by one Miller downward sweep.
pub fn bessel_j_all(nu_max: usize, x: f64) -> Vec<f64> {
    debug_assert!(x >= 0.0);
    if x < 1e-12 {
        let mut out = vec![0.0; nu_max + 1];
        out[0] = 1.0;
        if nu_max >= 1 {
            out[1] = 0.5 * x;
        }
        return out;
    }
    // start well above both the order and the turning point
    let start = nu_max + 16 + (x + 8.0 * x.cbrt()) as usize;
    let start = if start % 2 == 0 { start } else { start + 1 };
    let mut jp = 0.0f64; // J_{k+1}
    let mut j = 1e-300f64; // J_k seed
    let mut out = vec![0.0; nu_max + 1];
    let mut norm = 0.0f64; // J0 + 2 sum J_{2k}
    for k in (0..=start).rev() {
        let jm = (2.0 * (k as f64 + 1.0) / x) * j - jp; // J_k from J_{k+1}, J_{k+2}
        jp = j;
        j = jm;
        if k <= nu_max {
            out[k] = j;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j } else { 2.0 * j };
        }
        // rescale to avoid overflow during long sweeps
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Nodes and weights of the 16-point Gauss–Legendre rule on [-1, 1]
/// (positive half; mirror for the negative nodes).
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_91,
    0.458_016_777_657_227_39,
    0.617_876_244_402_643_75,
    0.755_404_408_355_003_03,
    0.865_631_202_387_831_74,
    0.944_575_023_073_232_58,
    0.989_400_934_991_649_93,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_50,
    0.182_603_415_044_923_59,
    0.169_156_519_395_002_54,
    0.149_595_988_816_576_73,
    0.124_628_971_255_533_87,
    0.095_158_511_682_492_78,
    0.062_253_523_938_647_89,
    0.027_152_459_411_754_09,
];

/// ∫_a^b f(t) dt by composite 16-point Gauss–Legendre over `panels` panels.
pub fn integrate_panels<F: Fn(f64) -> f64>(a: f64, b: f64, panels: usize, f: F) -> f64 {
    let mut acc = 0.0;
    let dw = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + dw * p as f64;
        let mid = lo + 0.5 * dw;
        let half = 0.5 * dw;
        for i in 0..8 {
            acc += GL16_W[i] * (f(mid + half * GL16_X[i]) + f(mid - half * GL16_X[i]));
        }
    }
    acc * 0.5 * dw
}
