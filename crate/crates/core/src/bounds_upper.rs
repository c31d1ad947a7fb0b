//! Upper bounds from the sharp Hausdorff-Young inequality followed by Hölder.
//!
//! For `2 < r ≤ ∞` the bound is `C_{r,d} · W(n s, d)^{1/s}` with
//! `s = 2/(1 − 2/r)`, `C_{r,d}` the Hausdorff-Young constant and `W` the
//! radial weight integral. The closed form is evaluated in logarithms and
//! checked against that product on every call.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{EmbeddingParams, Exponent};
use crate::specfun::{e_power, ln_gamma};

const IDENTITY_TOL: f64 = 1e-12;

/// Constituents of the upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBoundBreakdown {
    pub params: EmbeddingParams,
    /// `s = 2/(1 − 2/r)`; infinite at `r = 2`.
    pub s_conjugate: f64,
    /// Hölder conjugate `p` of `r`.
    pub p_conjugate: f64,
    pub hy_constant: f64,
    /// `W(n s, d)`; absent at `r = 2`, where the bound does not involve it.
    pub weight_integral: Option<f64>,
    pub s_plus: f64,
}

/// `C_{r,d} = (2π)^{−(d/2 − d/r)} (E(1/r)/E(1 − 1/r))^{d/2}`.
pub fn hausdorff_young_constant(r: impl Into<Exponent>, d: u32) -> Result<f64> {
    let r = r.into();
    if !(r.as_f64() >= 2.0) {
        return Err(Error::domain("hausdorff_young_constant", format!("r must be at least 2, got {r}")));
    }
    if d == 0 {
        return Err(Error::domain("hausdorff_young_constant", "d must be positive"));
    }
    let inv = r.recip();
    let dd = f64::from(d);
    let ratio = e_power(inv)? / e_power(1.0 - inv)?;
    Ok((-(dd / 2.0 - dd * inv) * (2.0 * PI).ln() + dd / 2.0 * ratio.ln()).exp())
}

/// `W(μ, d) = ∫_{R^d} dk (1 + |k|²)^{−μ/2} = π^{d/2} Γ((μ − d)/2) / Γ(μ/2)`.
pub fn radial_weight_integral(mu: f64, d: u32) -> Result<f64> {
    ln_radial_weight_integral(mu, d).map(f64::exp)
}

fn ln_radial_weight_integral(mu: f64, d: u32) -> Result<f64> {
    let dd = f64::from(d);
    if d == 0 {
        return Err(Error::domain("radial_weight_integral", "d must be positive"));
    }
    if !(mu > dd) || !mu.is_finite() {
        return Err(Error::domain(
            "radial_weight_integral",
            format!("integral diverges unless mu > d, got mu = {mu}, d = {d}"),
        ));
    }
    Ok(dd / 2.0 * PI.ln() + ln_gamma((mu - dd) / 2.0)?.value - ln_gamma(mu / 2.0)?.value)
}

/// `ln S⁺` from the closed form, valid for `2 < r ≤ ∞` and `n s > d`.
fn ln_upper_closed_form(params: &EmbeddingParams) -> Result<f64> {
    let inv = params.r().recip();
    let (n, dd) = (params.n(), f64::from(params.d()));
    let half_ns = n / (1.0 - 2.0 * inv);
    let gamma_ratio = ln_gamma(half_ns - dd / 2.0)?.value - ln_gamma(half_ns)?.value;
    let e_ratio = e_power(inv)?.ln() - e_power(1.0 - inv)?.ln();
    Ok(-(dd / 4.0 - dd * inv / 2.0) * (4.0 * PI).ln() + (0.5 - inv) * gamma_ratio + dd / 2.0 * e_ratio)
}

/// The upper bound with its constituents.
///
/// Fails with [`Error::Consistency`] if the closed form and the composed
/// product disagree beyond `1e-12` relative.
pub fn upper_bound_breakdown(params: &EmbeddingParams) -> Result<UpperBoundBreakdown> {
    let r = params.r();
    let d = params.d();
    let hy_constant = hausdorff_young_constant(r, d)?;
    let s = params.s_conjugate();
    if r == Exponent::Finite(2.0) {
        return Ok(UpperBoundBreakdown {
            params: *params,
            s_conjugate: s,
            p_conjugate: params.p_conjugate(),
            hy_constant,
            weight_integral: None,
            s_plus: 1.0,
        });
    }
    let s_plus = ln_upper_closed_form(params)?.exp();
    let weight = radial_weight_integral(params.n() * s, d)?;
    let composed = hy_constant * weight.powf(1.0 / s);
    let discrepancy = (composed - s_plus).abs() / s_plus;
    if !(discrepancy <= IDENTITY_TOL) {
        return Err(Error::Consistency {
            what: "upper bound closed form vs Hausdorff-Young composition",
            discrepancy,
        });
    }
    Ok(UpperBoundBreakdown {
        params: *params,
        s_conjugate: s,
        p_conjugate: params.p_conjugate(),
        hy_constant,
        weight_integral: Some(weight),
        s_plus,
    })
}

/// `S⁺_{r,n,d}`.
pub fn upper_bound(params: &EmbeddingParams) -> Result<f64> {
    upper_bound_breakdown(params).map(|b| b.s_plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: f64, n: f64, d: u32) -> EmbeddingParams {
        EmbeddingParams::new(r, n, d).unwrap()
    }

    #[test]
    fn hausdorff_young_examples() {
        for d in 1..=4 {
            assert!((hausdorff_young_constant(2.0, d).unwrap() - 1.0).abs() < 1e-15);
        }
        let at_inf = hausdorff_young_constant(f64::INFINITY, 1).unwrap();
        assert!((at_inf - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        // d/2 − d/r = 1/2 at r = 4, d = 2
        let want = (0.25f64.powf(0.25) / 0.75f64.powf(0.75)) / (2.0 * PI).sqrt();
        assert!((hausdorff_young_constant(4.0, 2).unwrap() - want).abs() < 1e-15);
        assert!(hausdorff_young_constant(1.5, 1).is_err());
    }

    #[test]
    fn weight_integral_examples() {
        assert!((radial_weight_integral(2.0, 1).unwrap() - PI).abs() < 1e-14);
        assert!((radial_weight_integral(4.0, 3).unwrap() - PI * PI).abs() < 1e-13);
        assert!(radial_weight_integral(3.0, 3).is_err());
    }

    #[test]
    fn endpoints() {
        assert_eq!(upper_bound(&params(2.0, 1.0, 1)).unwrap(), 1.0);
        assert_eq!(upper_bound(&params(2.0, 0.0, 3)).unwrap(), 1.0);
        let a = upper_bound(&params(f64::INFINITY, 1.0, 1)).unwrap();
        assert!((a - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        let d = upper_bound(&params(f64::INFINITY, 2.0, 3)).unwrap();
        assert!((d - 1.0 / (8.0 * PI).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn table_values_round_up() {
        let up = |x: f64| (x * 1e4).ceil() / 1e4;
        assert_eq!(up(upper_bound(&params(6.0, 1.0, 1)).unwrap()), 0.6345);
        assert_eq!(up(upper_bound(&params(3.0, 2.0, 2)).unwrap()), 0.4557);
    }

    #[test]
    fn breakdown_conjugates() {
        let b = upper_bound_breakdown(&params(6.0, 1.0, 1)).unwrap();
        assert!((b.s_conjugate - 3.0).abs() < 1e-15);
        assert!((1.0 / 6.0 + 1.0 / b.p_conjugate - 1.0).abs() < 1e-15);
        assert!(b.params.n() * b.s_conjugate > 1.0);
        let w = b.weight_integral.unwrap();
        assert!((b.hy_constant * w.powf(1.0 / 3.0) - b.s_plus).abs() < 1e-12 * b.s_plus);
    }

    #[test]
    fn subcritical_diverges_toward_limit() {
        // n = 1, d = 3: limit r = 6
        let mut previous = 0.0;
        for k in 1..=6 {
            let r = 6.0 * (1.0 - 10f64.powi(-k));
            let v = upper_bound(&params(r, 1.0, 3)).unwrap();
            assert!(v > previous, "k={k}");
            previous = v;
        }
        assert!(previous > 10.0);
    }

    #[test]
    fn critical_case_is_finite() {
        let v = upper_bound(&params(10.0, 1.0, 2)).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}
