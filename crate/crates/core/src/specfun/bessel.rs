//! Macdonald function `K_ν(ρ)`, modified Bessel function of the third kind.
//!
//! Half-integer orders `ν = m + 1/2` go through the elementary closed form
//!
//! ```text
//! ρ^{m+1/2} K_{m+1/2}(ρ) = √(π/2) e^{−ρ} Σ_{i=0}^{m} (2m−i)! / (i! (m−i)!) · ρ^i / 2^{m−i}
//! ```
//!
//! Other orders use Temme's series for `ρ < 2` and Steed's continued fraction
//! for `ρ ≥ 2` to get `K_μ, K_{μ+1}` with `|μ| ≤ 1/2`, followed by forward
//! recurrence in the order, which is stable for `K`.

use std::f64::consts::PI;

use super::SpecFunResult;
use crate::error::{Error, Result};

const MAX_ITER: usize = 10_000;
const TEMME_LIMIT: f64 = 2.0;
const LN_SQRT_HALF_PI: f64 = 0.225_791_352_644_727_4;

// Taylor coefficients of 1/Γ(z) about z = 0: 1/Γ(z) = Σ_{k≥1} c_k z^k.
#[allow(clippy::excessive_precision)]
const RGAMMA_TAYLOR: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
    1.714_406_321_927_337_433_4e-20,
];

/// Returns `m` when `nu = m + 1/2` for a non-negative integer `m`.
pub fn half_integer_order(nu: f64) -> Option<u32> {
    let m = nu - 0.5;
    if m >= 0.0 && m.fract() == 0.0 && m < f64::from(u32::MAX) {
        Some(m as u32)
    } else {
        None
    }
}

/// `Σ_{i=0}^{m} (2m−i)!/(i!(m−i)!) ρ^i/2^{m−i}` by Horner's rule.
fn half_integer_polynomial(m: u32, rho: f64) -> f64 {
    // a_m = 1 and a_{i−1} = a_i · i(2m − i + 1) / (2(m − i + 1)).
    let mut coeff = 1.0;
    let mut acc = 1.0;
    for i in (1..=m).rev() {
        let i_f = f64::from(i);
        coeff *= i_f * (2.0 * f64::from(m) - i_f + 1.0) / (2.0 * (f64::from(m) - i_f + 1.0));
        acc = acc * rho + coeff;
    }
    acc
}

/// ln of `ρ^{m+1/2} K_{m+1/2}(ρ)`.
fn ln_half_integer_power(m: u32, rho: f64) -> f64 {
    LN_SQRT_HALF_PI - rho + half_integer_polynomial(m, rho).ln()
}

/// Series pieces for Temme's method, `|μ| ≤ 1/2`:
/// `Γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ)`, `Γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ))/2`,
/// followed by `1/Γ(1+μ)` and `1/Γ(1−μ)`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    // 1/Γ(1+μ) = Σ_{j≥0} c_{j+1} μ^j, split by parity of j
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut power = 1.0;
    for pair in RGAMMA_TAYLOR.chunks(2) {
        even += pair[0] * power;
        odd += pair[1] * power;
        power *= mu2;
    }
    (-odd, even, even + mu * odd, even - mu * odd)
}

/// `(K_μ(x), K_{μ+1}(x))` for `|μ| ≤ 1/2`, `0 < x < 2`.
fn temme_series(mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < f64::EPSILON { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < f64::EPSILON { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * f64::EPSILON {
            return Ok((sum, sum1 * 2.0 / x));
        }
    }
    Err(Error::Convergence {
        what: "bessel_k Temme series",
        best_estimate: sum,
        abs_error: f64::INFINITY,
    })
}

/// Steed's continued fraction: `(K_μ(x), K_{μ+1}(x))` for `|μ| ≤ 1/2`, `x ≥ 2`.
/// Returned scaled by `e^{x}` to stay representable for large `x`.
fn steed_scaled(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            let k_mu = (PI / (2.0 * x)).sqrt() / s;
            let k_mu1 = k_mu * (mu + x + 0.5 - a1 * h) / x;
            return Ok((k_mu, k_mu1));
        }
    }
    Err(Error::Convergence {
        what: "bessel_k continued fraction",
        best_estimate: f64::NAN,
        abs_error: f64::INFINITY,
    })
}

fn check_args(function: &'static str, nu: f64, rho: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain(function, format!("order must be non-negative, got {nu}")));
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::domain(function, format!("argument must be positive, got {rho}")));
    }
    Ok(())
}

fn split_order(nu: f64) -> (f64, usize) {
    let steps = (nu + 0.5).floor();
    (nu - steps, steps as usize)
}

/// Macdonald function `K_ν(ρ)` for `ν ≥ 0`, `ρ > 0`.
pub fn bessel_k(nu: f64, rho: f64) -> Result<SpecFunResult> {
    check_args("bessel_k", nu, rho)?;
    if let Some(m) = half_integer_order(nu) {
        let log_value = ln_half_integer_power(m, rho) - nu * rho.ln();
        let value = log_value.exp();
        let rel = (f64::from(m) + 4.0) * f64::EPSILON * (1.0 + log_value.abs());
        return SpecFunResult::checked("bessel_k", value, value * rel);
    }
    let (mu, steps) = split_order(nu);
    let (mut k_prev, mut k_cur, log_scale) = if rho < TEMME_LIMIT {
        let (a, b) = temme_series(mu, rho)?;
        (a, b, 0.0)
    } else {
        let (a, b) = steed_scaled(mu, rho)?;
        (a, b, -rho)
    };
    for i in 1..=steps {
        let next = 2.0 * (mu + i as f64) / rho * k_cur + k_prev;
        k_prev = k_cur;
        k_cur = next;
    }
    let value = k_prev * log_scale.exp();
    if !value.is_finite() || !k_prev.is_finite() {
        return Err(Error::range(
            "bessel_k",
            format!("K_{nu}({rho}) overflows double precision"),
        ));
    }
    let rel = (32.0 + 2.0 * steps as f64) * f64::EPSILON;
    SpecFunResult::checked("bessel_k", value, value * rel)
}

/// `ρ^ν K_ν(ρ)`, the combination that appears in the Bessel-potential kernels.
///
/// Computed without forming `K_ν` itself, so it stays finite as `ρ → 0`
/// (its limit there is `2^{ν−1} Γ(ν)` for `ν > 0`).
pub fn bessel_k_power(nu: f64, rho: f64) -> Result<SpecFunResult> {
    check_args("bessel_k_power", nu, rho)?;
    if let Some(m) = half_integer_order(nu) {
        let log_value = ln_half_integer_power(m, rho);
        let value = log_value.exp();
        let rel = (f64::from(m) + 4.0) * f64::EPSILON * (1.0 + rho);
        return SpecFunResult::checked("bessel_k_power", value, value * rel);
    }
    let (mu, steps) = split_order(nu);
    let (k0, k1, log_scale) = if rho < TEMME_LIMIT {
        let (a, b) = temme_series(mu, rho)?;
        (a, b, 0.0)
    } else {
        let (a, b) = steed_scaled(mu, rho)?;
        (a, b, -rho)
    };
    let ln_rho = rho.ln();
    // P_v = ρ^v K_v obeys P_{v+1} = 2v P_v + ρ² P_{v−1}.
    let mut p_prev = k0 * (mu * ln_rho + log_scale).exp();
    let mut p_cur = k1 * ((mu + 1.0) * ln_rho + log_scale).exp();
    let rho2 = rho * rho;
    for i in 1..=steps {
        let next = 2.0 * (mu + i as f64) * p_cur + rho2 * p_prev;
        p_prev = p_cur;
        p_cur = next;
    }
    let rel = (32.0 + 2.0 * steps as f64) * f64::EPSILON;
    SpecFunResult::checked("bessel_k_power", p_prev, p_prev * rel)
}
