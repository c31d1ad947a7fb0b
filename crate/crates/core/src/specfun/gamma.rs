use std::f64::consts::PI;

use super::SpecFunResult;
use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine terms (Godfrey).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(x)` for `x ≥ 1/2`, plus the magnitude of the terms that were summed.
fn ln_gamma_lanczos(x: f64) -> (f64, f64) {
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_t_term = (z + 0.5) * t.ln();
    let value = LN_SQRT_2PI + log_t_term - t + series.ln();
    (value, LN_SQRT_2PI + log_t_term.abs() + t + series.ln().abs())
}

/// `sin(πx)` with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<SpecFunResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("argument must be positive, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(SpecFunResult {
            value: 0.0,
            abs_error_estimate: 0.0,
        });
    }
    let (value, magnitude) = if x >= 0.5 {
        ln_gamma_lanczos(x)
    } else {
        // Γ(x)Γ(1−x) = π / sin(πx)
        let (reflected, magnitude) = ln_gamma_lanczos(1.0 - x);
        let log_sin = (PI / sin_pi(x)).ln();
        (log_sin - reflected, magnitude + log_sin.abs())
    };
    SpecFunResult::checked("ln_gamma", value, 8.0 * f64::EPSILON * (magnitude + value.abs()))
}

/// Γ(x) for any real `x` that is not a pole.
pub fn gamma(x: f64) -> Result<SpecFunResult> {
    if x.is_nan() {
        return Err(Error::domain("gamma", "argument is NaN"));
    }
    if x > 0.0 {
        let lg = ln_gamma(x)?;
        let value = lg.value.exp();
        return SpecFunResult::checked("gamma", value, value * (lg.abs_error_estimate + 2.0 * f64::EPSILON));
    }
    if x == x.floor() {
        return Err(Error::domain("gamma", format!("pole at non-positive integer {x}")));
    }
    let lg = ln_gamma(1.0 - x)?;
    let s = sin_pi(x);
    let value = PI / (s * lg.value.exp());
    SpecFunResult::checked(
        "gamma",
        value,
        value.abs() * (lg.abs_error_estimate + 4.0 * f64::EPSILON),
    )
}

/// 1/Γ(x), which is entire: zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 0.0 {
        match ln_gamma(x) {
            Ok(lg) => (-lg.value).exp(),
            Err(_) => f64::NAN,
        }
    } else {
        match ln_gamma(1.0 - x) {
            Ok(lg) => sin_pi(x) * lg.value.exp() / PI,
            Err(_) => f64::NAN,
        }
    }
}

/// Euler's beta function `B(z, w) = Γ(z)Γ(w)/Γ(z + w)` for positive arguments.
pub fn beta(z: f64, w: f64) -> Result<SpecFunResult> {
    if !(z > 0.0) || !(w > 0.0) {
        return Err(Error::domain(
            "beta",
            format!("arguments must be positive, got ({z}, {w})"),
        ));
    }
    let a = ln_gamma(z)?;
    let b = ln_gamma(w)?;
    let c = ln_gamma(z + w)?;
    let log_value = a.value + b.value - c.value;
    let value = log_value.exp();
    let log_err = a.abs_error_estimate + b.abs_error_estimate + c.abs_error_estimate;
    SpecFunResult::checked("beta", value, value * (log_err + 2.0 * f64::EPSILON))
}

/// Beta function extended to negative non-integer arguments through Γ's reflection.
/// The result is zero when `z + w` is a pole of Γ.
pub(crate) fn beta_signed(z: f64, w: f64) -> Result<SpecFunResult> {
    if z > 0.0 && w > 0.0 {
        return beta(z, w);
    }
    let gz = gamma(z)?;
    let gw = gamma(w)?;
    let inv = rgamma(z + w);
    let value = gz.value * gw.value * inv;
    let rel = gz.rel_error_estimate() + gw.rel_error_estimate() + 8.0 * f64::EPSILON;
    SpecFunResult::checked("beta", value, value.abs() * rel)
}

/// `E(s) = s^s`, continuously extended by `E(0) = 1`.
pub fn e_power(s: f64) -> Result<f64> {
    if s.is_nan() || s < 0.0 {
        return Err(Error::domain("e_power", format!("argument must be non-negative, got {s}")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    Ok((s * s.ln()).exp())
}

/// Binomial coefficient `C(n, k)` as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}
