//! Bessel-potential kernels `G_{ν,d}` and the norm ratios of the trial
//! functions built from them.
//!
//! Everything is radial. `G_{ν,d}` is the inverse Fourier transform of
//! `(1 + |k|²)^{−ν/2}` with the symmetric `(2π)^{−d/2}` convention, so
//! `G_{2n,d} = (2π)^{−d/2} G_{n,d} ∗ G_{n,d}`.

use std::f64::consts::{LN_2, PI};

use crate::bounds_lower::{phi, BoundOptions};
use crate::bounds_upper::{radial_weight_integral, upper_bound};
use crate::error::{Error, Result};
use crate::numerics::{integrate_semiline, QuadratureConfig};
use crate::params::{EmbeddingParams, Exponent};
use crate::specfun::{bessel_k, bessel_k_power, ln_gamma};

/// Order and dimension of a Bessel-potential kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    nu: f64,
    d: u32,
}

impl KernelSpec {
    /// `ν = 0` is the delta distribution and has no pointwise values.
    pub fn new(nu: f64, d: u32) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::domain("KernelSpec", format!("order must be positive, got {nu}")));
        }
        if d == 0 {
            return Err(Error::domain("KernelSpec", "d must be positive"));
        }
        Ok(KernelSpec { nu, d })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn d(&self) -> u32 {
        self.d
    }
}

/// `G_{ν,d}(x)` at `|x| = radius`:
/// `|x|^{ν/2−d/2} K_{|ν/2−d/2|}(|x|) / (2^{ν/2−1} Γ(ν/2))`.
pub fn g_kernel(spec: &KernelSpec, radius: f64) -> Result<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain("g_kernel", format!("radius must be positive, got {radius}")));
    }
    let alpha = spec.nu / 2.0 - f64::from(spec.d) / 2.0;
    let ln_norm = (spec.nu / 2.0 - 1.0) * LN_2 + ln_gamma(spec.nu / 2.0)?.value;
    let radial = if alpha > 0.0 {
        // ρ^α K_α stays finite at small ρ
        bessel_k_power(alpha, radius)?.value
    } else {
        let k = bessel_k(-alpha, radius)?.value;
        if k == 0.0 {
            0.0
        } else {
            (alpha * radius.ln() + k.ln()).exp()
        }
    };
    Ok(radial * (-ln_norm).exp())
}

fn ln_sphere_area(d: u32) -> Result<f64> {
    let half_d = f64::from(d) / 2.0;
    Ok(LN_2 + half_d * PI.ln() - ln_gamma(half_d)?.value)
}

fn require_supercritical(function: &'static str, n: f64, d: u32) -> Result<()> {
    if !(n > f64::from(d) / 2.0) || !n.is_finite() || d == 0 {
        return Err(Error::domain(function, format!("requires n > d/2, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// `‖G^{(λ)}‖_{L^r} / ‖G^{(λ)}‖_{H^n}` for the trial function
/// `G^{(λ)}(x) = G_{2n,d}(λx)`.
///
/// The `L^r` norm is a radial quadrature of [`g_kernel`] in position space;
/// the `H^n` norm uses `φ(λ)` on the Fourier side. Both are assembled in
/// logarithms. This is deliberately independent of the lower-bound module's
/// formula, which it must reproduce at the minimizer.
pub fn scaled_ratio(params: &EmbeddingParams, lambda: f64, opts: &BoundOptions) -> Result<f64> {
    let r = match params.r() {
        Exponent::Finite(r) if params.has_trial_lower_bound() => r,
        _ => {
            return Err(Error::domain(
                "scaled_ratio",
                format!("requires n > d/2 and 2 < r < inf, got {params}"),
            ))
        }
    };
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("scaled_ratio", format!("lambda must be positive, got {lambda}")));
    }
    let (n, d) = (params.n(), params.d());
    let dd = f64::from(d);
    let spec = KernelSpec::new(2.0 * n, d)?;
    // G_{2n,d}(0) = 2^{ν−1}Γ(ν) / (2^{n−1}Γ(n)) with ν = n − d/2
    let nu = n - dd / 2.0;
    let ln_g0 = (nu - n) * LN_2 + ln_gamma(nu)?.value - ln_gamma(n)?.value;
    let lr = integrate_semiline(
        |t: f64| {
            let g = g_kernel(&spec, t).unwrap_or(f64::NAN);
            if g == 0.0 {
                0.0
            } else {
                ((dd - 1.0) * t.ln() + r * (g.ln() - ln_g0)).exp()
            }
        },
        &QuadratureConfig {
            abs_tol: f64::MIN_POSITIVE,
            ..opts.quadrature
        },
    )?;
    let ln_area = ln_sphere_area(d)?;
    // ‖G^{(λ)}‖_r^r = |S^{d−1}| λ^{−d} ∫ t^{d−1} G(t)^r dt
    let ln_lr = (ln_area - dd * lambda.ln() + r * ln_g0 + lr.value.ln()) / r;
    // ‖G^{(λ)}‖²_{H^n} = |S^{d−1}| λ^{−d} J(λ),  J(λ) = λ^{d−2d/r} φ(λ)
    let phi_value = phi(params, lambda, opts)?.value;
    let ln_j = (dd - 2.0 * dd / r) * lambda.ln() + phi_value.ln();
    let ln_hn = 0.5 * (ln_area - dd * lambda.ln() + ln_j);
    Ok((ln_lr - ln_hn).exp())
}

/// Relative gap between `‖G_{2n,d}‖_∞ / ‖G_{2n,d}‖_{H^n}`, computed on the
/// Fourier side as `(2π)^{−d/2} √W(2n, d)`, and the upper bound at `r = ∞`.
pub fn supnorm_sharpness_residual(n: f64, d: u32) -> Result<f64> {
    require_supercritical("supnorm_sharpness_residual", n, d)?;
    let ratio = (2.0 * PI).powf(-f64::from(d) / 2.0) * radial_weight_integral(2.0 * n, d)?.sqrt();
    let s_inf = upper_bound(&EmbeddingParams::new(Exponent::Infinite, n, d)?)?;
    Ok((ratio - s_inf).abs() / s_inf)
}

/// `‖f^{(λ)}‖_{L²} / ‖f^{(λ)}‖_{H^n}` for `f = G_{2n,d}` and each `λ`.
///
/// With `F f(h) = (1 + h²)^{−n}` the ratio is `(1 + δ(λ))^{−1/2}`, where
/// `δ(λ) = ∫ h^{d−1} ((1 + λ²h²)^n − 1) (1 + h²)^{−2n} dh / ∫ h^{d−1} (1 + h²)^{−2n} dh`.
/// `δ` is integrated directly so the ratio keeps its digits as `λ → 0`.
/// Finite norms need `n > d/2`.
pub fn l2_scaling_limit(n: f64, d: u32, lambdas: &[f64], cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    require_supercritical("l2_scaling_limit", n, d)?;
    let dd = f64::from(d);
    let base = integrate_semiline(|h: f64| h.powf(dd - 1.0) * (1.0 + h * h).powf(-2.0 * n), cfg)?.value;
    lambdas
        .iter()
        .map(|&lambda| {
            if !(lambda > 0.0) || !lambda.is_finite() {
                return Err(Error::domain("l2_scaling_limit", format!("lambda must be positive, got {lambda}")));
            }
            let l2 = lambda * lambda;
            let excess = integrate_semiline(
                |h: f64| {
                    let grow = (n * (l2 * h * h).ln_1p()).exp_m1();
                    h.powf(dd - 1.0) * grow * (1.0 + h * h).powf(-2.0 * n)
                },
                &QuadratureConfig {
                    abs_tol: f64::MIN_POSITIVE,
                    ..*cfg
                },
            )?
            .value;
            Ok((1.0 + excess / base).sqrt().recip())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds_lower::lower_bound;

    fn params(r: f64, n: f64, d: u32) -> EmbeddingParams {
        EmbeddingParams::new(r, n, d).unwrap()
    }

    #[test]
    fn kernel_elementary_forms() {
        // ν = d + 1: √π e^{−ρ} / (2^{d/2} Γ(d/2 + 1/2))
        for d in 1..=3 {
            let spec = KernelSpec::new(f64::from(d) + 1.0, d).unwrap();
            let norm = 2f64.powf(f64::from(d) / 2.0) * ln_gamma(f64::from(d) / 2.0 + 0.5).unwrap().value.exp();
            for &rho in &[0.1f64, 1.0, 10.0] {
                let want = PI.sqrt() * (-rho).exp() / norm;
                let got = g_kernel(&spec, rho).unwrap();
                assert!((got - want).abs() < 1e-12 * want, "d={d} rho={rho}");
            }
        }
        let a = g_kernel(&KernelSpec::new(2.0, 1).unwrap(), 1.0).unwrap();
        assert!((a - (PI / 2.0).sqrt() / std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn kernel_integer_offset_form() {
        // ν = d + 2, d = 2: ρ K₁(ρ) / (2 Γ(2))
        let spec = KernelSpec::new(4.0, 2).unwrap();
        let got = g_kernel(&spec, 2.0).unwrap();
        let want = 2.0 * bessel_k(1.0, 2.0).unwrap().value / 2.0;
        assert!((got - want).abs() < 1e-14 * want);
        assert!((got - 0.139_865_881_816_522_4).abs() < 1e-13);
    }

    #[test]
    fn convolution_identity_in_one_dimension() {
        // G_{2,1}(x) = (2π)^{−1/2} ∫ G_{1,1}(y) G_{1,1}(x − y) dy, G_{1,1} = √(2/π) K₀
        let half = KernelSpec::new(1.0, 1).unwrap();
        let full = KernelSpec::new(2.0, 1).unwrap();
        let x: f64 = 0.7;
        let g = |y: f64| g_kernel(&half, y.abs()).unwrap();
        // split at the two logarithmic singularities y = 0 and y = x
        let cfg = QuadratureConfig::default();
        let left = integrate_semiline(|u: f64| g(-u) * g(x + u), &cfg).unwrap().value;
        let mid = crate::numerics::integrate(|y: f64| g(y) * g(x - y), 0.0, x, &cfg).unwrap().value;
        let right = integrate_semiline(|u: f64| g(x + u) * g(u), &cfg).unwrap().value;
        let conv = (left + mid + right) / (2.0 * PI).sqrt();
        let want = g_kernel(&full, x).unwrap();
        assert!((conv - want).abs() < 1e-8 * want, "{conv} vs {want}");
    }

    #[test]
    fn kernel_rejects_bad_input() {
        assert!(KernelSpec::new(0.0, 1).is_err());
        assert!(g_kernel(&KernelSpec::new(2.0, 1).unwrap(), 0.0).is_err());
    }

    #[test]
    fn scaled_ratio_reproduces_lower_bound() {
        let opts = BoundOptions::default();
        for &(r, n, d) in &[(4.0, 1.0, 1), (6.0, 3.0, 1), (3.0, 2.0, 2), (7.0, 2.0, 3)] {
            let p = params(r, n, d);
            let lb = lower_bound(&p, &opts).unwrap();
            let ratio = scaled_ratio(&p, lb.phi_min.lambda_star, &opts).unwrap();
            assert!((ratio - lb.s_minus).abs() < 1e-10 * lb.s_minus, "{p}: {ratio} vs {}", lb.s_minus);
        }
    }

    #[test]
    fn scaled_ratio_is_suboptimal_away_from_minimizer() {
        let opts = BoundOptions::default();
        let p = params(4.0, 1.0, 1);
        let at_star = scaled_ratio(&p, (1.0f64 / 3.0).sqrt(), &opts).unwrap();
        assert_eq!((at_star * 1e4).floor() / 1e4, 0.6347);
        let off = scaled_ratio(&p, 0.1, &opts).unwrap();
        assert!(off < 0.6347);
    }

    #[test]
    fn supnorm_residuals() {
        for &(n, d) in &[(1.0, 1), (3.0, 1), (2.0, 2), (2.0, 3), (4.7, 5)] {
            assert!(supnorm_sharpness_residual(n, d).unwrap() < 1e-12);
        }
        assert!(supnorm_sharpness_residual(1.0, 2).is_err());
    }

    #[test]
    fn scaling_limit_increases_to_one() {
        let cfg = QuadratureConfig::default();
        let lambdas = [1.0, 0.1, 0.01, 0.001];
        for &(n, d) in &[(1.0, 1), (2.0, 2), (2.0, 3)] {
            let v = l2_scaling_limit(n, d, &lambdas, &cfg).unwrap();
            assert!(v.windows(2).all(|w| w[0] < w[1]), "{v:?}");
            assert!(v[3] > 0.999 && v[3] < 1.0);
        }
        // n = d = 1: ratio = (1 + λ²)^{−1/2}
        let v = l2_scaling_limit(1.0, 1, &[1.0, 1e-3], &cfg).unwrap();
        assert!((v[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((v[1] - (1.0f64 + 1e-6).sqrt().recip()).abs() < 1e-12);
    }
}
