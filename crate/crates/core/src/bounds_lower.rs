//! Lower bounds from rescaled Bessel-potential trial functions, valid for
//! `n > d/2` and `2 < r < ∞`, and the two-sided bracket built from both bounds.
//!
//! `S⁻ = (Γ(d/2)/(2π^{d/2}))^{1/2−1/r} · I^{1/r} / (2^{n−1} Γ(n) √Φ)`, where
//! `I = ∫₀^∞ t^{d−1} (t^ν K_ν(t))^r dt` with `ν = n − d/2`, and `Φ` is the
//! minimum over `λ > 0` of
//! `φ(λ) = λ^{−(d − 2d/r)} ∫₀^∞ s^{d−1} (1 + λ²s²)^n / (1 + s²)^{2n} ds`.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::bounds_upper::{upper_bound_breakdown, UpperBoundBreakdown};
use crate::error::{Error, Result};
use crate::numerics::{
    integrate, integrate_beta_weighted, minimize_scalar_with, MinimizationResult, MinimizeConfig,
    QuadratureConfig, QuadratureResult,
};
use crate::params::{EmbeddingParams, Exponent};
use crate::specfun::{beta, beta_signed, bessel_k, bessel_k_power, binomial, hyp2f1, ln_gamma};

/// Ways of evaluating `φ(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PhiRoute {
    /// Adaptive quadrature of the defining integral; always available.
    Quadrature,
    /// Finite sum of beta functions; integer `n` only.
    Binomial,
    /// Two Gauss series; needs `λ < 1` and `2n − d/2 − 1` not a natural number.
    Hypergeometric,
    /// The elementary polynomials for `(n, d) ∈ {(1,1), (3,1), (2,2), (2,3)}`.
    ExampleClosedForm,
}

impl PhiRoute {
    /// Binomial for integer `n`, quadrature otherwise.
    pub fn auto(params: &EmbeddingParams) -> PhiRoute {
        if integer_order(params.n()).is_some() {
            PhiRoute::Binomial
        } else {
            PhiRoute::Quadrature
        }
    }
}

/// Settings for the lower-bound and bracket computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptions {
    pub quadrature: QuadratureConfig,
    pub minimize: MinimizeConfig,
    /// `None` picks [`PhiRoute::auto`].
    pub phi_route: Option<PhiRoute>,
    /// Use the closed-form minimizers where they exist instead of searching.
    pub use_closed_forms: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            quadrature: QuadratureConfig::default(),
            minimize: MinimizeConfig::default(),
            phi_route: None,
            use_closed_forms: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiEvaluation {
    pub lambda: f64,
    pub value: f64,
    pub route: PhiRoute,
    pub abs_error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralMethod {
    ClosedForm,
    Quadrature { subdivisions: usize },
}

/// The trial-function integral `I`, kept in logarithmic form because
/// `I` itself overflows for large `r` once `2^{ν−1}Γ(ν) > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialIntegral {
    pub ln_value: f64,
    pub rel_error_estimate: f64,
    pub method: IntegralMethod,
}

impl TrialIntegral {
    /// `I` itself; may be `inf` where only the logarithm is representable.
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimumSource {
    /// Explicit minimizer formula.
    ClosedForm,
    /// Positive root of the stationarity polynomial, by bisection.
    PolynomialRoot { iterations: usize },
    Numeric(MinimizationResultSummary),
}

/// Serializable copy of [`MinimizationResult`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimizationResultSummary {
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub local_minima: usize,
}

impl From<&MinimizationResult> for MinimizationResultSummary {
    fn from(m: &MinimizationResult) -> Self {
        MinimizationResultSummary {
            iterations: m.iterations,
            bracket: m.bracket,
            local_minima: m.local_minima,
        }
    }
}

/// `λ*` and `Φ = φ(λ*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiMinimum {
    pub lambda_star: f64,
    pub phi_min: f64,
    pub source: MinimumSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundBreakdown {
    pub params: EmbeddingParams,
    pub i_integral: TrialIntegral,
    /// `I`; `inf` when only its logarithm is representable.
    pub i_value: f64,
    pub phi_min: PhiMinimum,
    pub s_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BracketKind {
    /// The upper bound is the sharp constant.
    Sharp,
    /// Trial-function lower bound below the upper bound.
    Estimated,
    /// No lower bound is available.
    UpperOnly,
}

/// `[S⁻, S⁺]` for one triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundBracket {
    pub params: EmbeddingParams,
    pub s_minus: Option<f64>,
    pub s_plus: f64,
    pub kind: BracketKind,
    /// `(S⁺ − S⁻)/S⁻`.
    pub rel_uncertainty: Option<f64>,
    pub upper: UpperBoundBreakdown,
    pub lower: Option<LowerBoundBreakdown>,
}

impl BoundBracket {
    pub fn lambda_star(&self) -> Option<f64> {
        self.lower.map(|l| l.phi_min.lambda_star)
    }

    pub fn is_sharp(&self) -> bool {
        self.kind == BracketKind::Sharp
    }
}

fn integer_order(n: f64) -> Option<u32> {
    ((0.0..=10_000.0).contains(&n) && n == n.round()).then_some(n as u32)
}

fn require_trial_range(function: &'static str, params: &EmbeddingParams) -> Result<f64> {
    match params.r() {
        Exponent::Finite(r) if params.has_trial_lower_bound() => Ok(r),
        _ => Err(Error::domain(
            function,
            format!("requires n > d/2 and 2 < r < inf, got {params}"),
        )),
    }
}

/// `K_ν(t) ≤ C t^{−1/2} e^{−t}` for `t ≥ 1`: `√t e^t K_ν(t)` decreases for
/// `ν ≥ 1/2` and increases to `√(π/2)` for `ν < 1/2`.
fn ln_decay_constant(nu: f64) -> Result<f64> {
    if nu >= 0.5 {
        Ok(1.0 + bessel_k(nu, 1.0)?.value.ln())
    } else {
        Ok(0.5 * (PI / 2.0).ln())
    }
}

/// `I` by adaptive quadrature in `x = ln t` with certified tails, whatever `ν`.
///
/// The log-integrand `h(x) = d x + r ln(t^ν K_ν(t))` is concave (its slope
/// `d − r t K_{ν−1}(t)/K_ν(t)` decreases), so the integrand has a single
/// peak. The peak is found by bisection on the slope and the integrand is
/// normalized by its value there. For small `ν` and large `r` the mass sits at
/// `t` far below machine epsilon, which is why the integration runs in `ln t`.
/// Windows around the peak are doubled until the tail bounds
/// `t^ν K_ν(t) ≤ 2^{ν−1}Γ(ν)` (left) and `K_ν(t) ≤ C t^{−1/2} e^{−t}` for
/// `t ≥ 1` (right) fall below a tenth of the tolerance; both are added to the
/// error estimate. Only the relative tolerance of `cfg` applies: the integrand
/// is positive, so there is no cancellation for an absolute floor to guard.
pub fn i_integral_quadrature(params: &EmbeddingParams, cfg: &QuadratureConfig) -> Result<TrialIntegral> {
    const MAX_WIDTH: f64 = 4096.0;
    let r = require_trial_range("i_integral", params)?;
    let d = f64::from(params.d());
    let nu = params.n() - params.half_d();
    let ln_g0 = (nu - 1.0) * LN_2 + ln_gamma(nu)?.value;
    let x_min = f64::MIN_POSITIVE.ln();

    let h = |x: f64| match bessel_k_power(nu, x.exp()) {
        Ok(p) => d * x + r * p.value.ln(),
        Err(_) => f64::NAN,
    };
    // t K_{ν−1}/K_ν through P_μ = t^μ K_μ, with K_{ν−1} = K_{1−ν} below ν = 1
    let (lower_order, power) = if nu >= 1.0 { (nu - 1.0, 2.0) } else { (1.0 - nu, 2.0 * nu) };
    let slope = |x: f64| {
        let t = x.exp();
        match (bessel_k_power(lower_order, t), bessel_k_power(nu, t)) {
            (Ok(num), Ok(den)) => d - r * t.powf(power) * num.value / den.value,
            _ => f64::NAN,
        }
    };

    // NaN slopes come from underflow at large t, i.e. right of the peak
    let (mut lo, mut hi) = (-1.0, 1.0);
    while slope(hi) > 0.0 {
        lo = hi;
        hi += 1.0;
        if hi > 8.0 {
            return Err(Error::Convergence {
                what: "trial integral peak search",
                best_estimate: hi.exp(),
                abs_error: f64::INFINITY,
            });
        }
    }
    let mut step = 1.0;
    while !(slope(lo) > 0.0) {
        hi = lo;
        lo = (lo - step).max(x_min);
        step *= 2.0;
        if lo == x_min && !(slope(lo) > 0.0) {
            return Err(Error::range("i_integral", "integrand peak lies below the smallest positive double"));
        }
    }
    while hi - lo > 1e-12 * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let peak = 0.5 * (lo + hi);
    let h_peak = h(peak);
    if !h_peak.is_finite() {
        return Err(Error::range("i_integral", "integrand is not finite at its peak"));
    }
    let integrand = |x: f64| (h(x) - h_peak).exp();

    let ln_c = ln_decay_constant(nu)?;
    let a = d - 1.0 + r * (nu - 0.5);
    let left_tail = |x: f64| (r * ln_g0 + d * x - d.ln() - h_peak).exp();
    let right_tail = |x: f64| {
        let cut = x.exp();
        let rate = if a > 0.0 { r - a / cut } else { r };
        if cut < 1.0 || rate <= 0.0 {
            return f64::INFINITY;
        }
        (r * ln_c + a * x - r * cut - rate.ln() - h_peak).exp()
    };

    let relative_only = QuadratureConfig {
        abs_tol: f64::MIN_POSITIVE,
        ..*cfg
    };
    let piece = |a: f64, b: f64| integrate(integrand, a, b, &relative_only);
    let mut total = QuadratureResult {
        value: 0.0,
        abs_error_estimate: 0.0,
        subdivisions: 0,
    };
    let absorb = |total: &mut QuadratureResult, p: QuadratureResult| {
        total.value += p.value;
        total.abs_error_estimate += p.abs_error_estimate;
        total.subdivisions += p.subdivisions;
    };
    absorb(&mut total, piece(peak - 1.0, peak)?);
    absorb(&mut total, piece(peak, peak + 1.0)?);
    let (mut left, mut right) = (1.0, 1.0);
    loop {
        let target = 0.1 * relative_only.rel_tol * total.value;
        let left_done = left_tail(peak - left) <= target || peak - left <= x_min;
        let right_done = right_tail(peak + right) <= target;
        if left_done && right_done {
            break;
        }
        if left.max(right) > MAX_WIDTH {
            return Err(Error::Convergence {
                what: "trial integral tail truncation",
                best_estimate: total.value,
                abs_error: left_tail(peak - left) + right_tail(peak + right),
            });
        }
        if !left_done {
            absorb(&mut total, piece((peak - 2.0 * left).max(x_min), peak - left)?);
            left *= 2.0;
        }
        if !right_done {
            absorb(&mut total, piece(peak + right, peak + 2.0 * right)?);
            right *= 2.0;
        }
    }
    let error = total.abs_error_estimate + left_tail(peak - left) + right_tail(peak + right);
    if !(total.value > 0.0) {
        return Err(Error::range("i_integral", "integral underflowed"));
    }
    Ok(TrialIntegral {
        ln_value: h_peak + total.value.ln(),
        rel_error_estimate: error / total.value,
        method: IntegralMethod::Quadrature {
            subdivisions: total.subdivisions,
        },
    })
}

/// `I = ∫₀^∞ t^{d−1} (t^ν K_ν(t))^r dt`. Exact for `ν = 1/2`, where
/// `I = (π/2)^{r/2} Γ(d) / r^d`; quadrature otherwise.
pub fn i_integral(params: &EmbeddingParams, cfg: &QuadratureConfig) -> Result<TrialIntegral> {
    let r = require_trial_range("i_integral", params)?;
    let d = f64::from(params.d());
    if params.n() - params.half_d() == 0.5 {
        let lg = ln_gamma(d)?;
        return Ok(TrialIntegral {
            ln_value: r / 2.0 * (PI / 2.0).ln() + lg.value - d * r.ln(),
            rel_error_estimate: lg.abs_error_estimate + 4.0 * f64::EPSILON * r,
            method: IntegralMethod::ClosedForm,
        });
    }
    i_integral_quadrature(params, cfg)
}

/// `φ(λ)` by the route in `opts` (or the automatic one).
pub fn phi(params: &EmbeddingParams, lambda: f64, opts: &BoundOptions) -> Result<PhiEvaluation> {
    let route = opts.phi_route.unwrap_or_else(|| PhiRoute::auto(params));
    phi_by_route(params, lambda, route, &opts.quadrature)
}

pub fn phi_by_route(
    params: &EmbeddingParams,
    lambda: f64,
    route: PhiRoute,
    cfg: &QuadratureConfig,
) -> Result<PhiEvaluation> {
    let r = require_trial_range("phi", params)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("phi", format!("lambda must be positive and finite, got {lambda}")));
    }
    let (n, d) = (params.n(), params.d());
    let half_d = params.half_d();
    let prefactor = (-f64::from(d) * (1.0 - 2.0 / r) * lambda.ln()).exp();
    let l2 = lambda * lambda;
    let (sum, sum_err) = match route {
        PhiRoute::Quadrature => {
            let res = integrate_beta_weighted(half_d, n - half_d, |x| (1.0 + (l2 - 1.0) * x).powf(n), cfg)?;
            (res.value, res.abs_error_estimate)
        }
        PhiRoute::Binomial => {
            let m = integer_order(n).ok_or(Error::Route {
                route: "binomial",
                message: format!("n = {n} is not an integer"),
            })?;
            let mut sum = 0.0;
            let mut err = 0.0;
            let mut power = 1.0;
            for l in 0..=m {
                let lf = f64::from(l);
                let b = beta(lf + half_d, 2.0 * n - half_d - lf)?;
                let term = binomial(m, l) * b.value * power;
                sum += term;
                err += term * (b.rel_error_estimate() + 4.0 * f64::EPSILON);
                power *= l2;
            }
            (sum, err)
        }
        PhiRoute::Hypergeometric => {
            if lambda >= 1.0 {
                return Err(Error::Route {
                    route: "hypergeometric",
                    message: format!("needs lambda < 1, got {lambda}"),
                });
            }
            let c1 = 1.0 + half_d - 2.0 * n;
            if c1 <= 0.0 && c1 == c1.floor() {
                return Err(Error::SingularParameter {
                    function: "phi",
                    message: format!("2n - d/2 - 1 = {} is a natural number", -c1),
                });
            }
            let b1 = beta(2.0 * n - half_d, half_d)?;
            let f1 = hyp2f1(half_d, -n, c1, l2)?;
            let b2 = beta_signed(n - half_d, half_d - 2.0 * n)?;
            let f2 = hyp2f1(2.0 * n, n - half_d, 1.0 - half_d + 2.0 * n, l2)?;
            let lp = lambda.powf(4.0 * n - f64::from(d));
            let first = b1.value * f1.value;
            let second = lp * b2.value * f2.value;
            let err = b1.value * f1.abs_error_estimate
                + first.abs() * b1.rel_error_estimate()
                + (lp * b2.value).abs() * f2.abs_error_estimate
                + second.abs() * (b2.rel_error_estimate() + 4.0 * f64::EPSILON);
            (first + second, err)
        }
        PhiRoute::ExampleClosedForm => {
            let poly = example_polynomial(n, d, l2).ok_or(Error::Route {
                route: "example closed form",
                message: format!("no closed form for n = {n}, d = {d}"),
            })?;
            // the polynomials already include the factor 1/2
            (2.0 * poly, 8.0 * f64::EPSILON * poly)
        }
    };
    let value = 0.5 * prefactor * sum;
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::range("phi", format!("phi({lambda}) evaluated to {value}")));
    }
    Ok(PhiEvaluation {
        lambda,
        value,
        route,
        abs_error_estimate: 0.5 * prefactor * sum_err + 2.0 * f64::EPSILON * value,
    })
}

/// `λ^{d−2d/r} φ(λ)` for the worked examples, as polynomials in `λ²`.
fn example_polynomial(n: f64, d: u32, l2: f64) -> Option<f64> {
    let l4 = l2 * l2;
    match (n, d) {
        (1.0, 1) => Some(PI * (l2 + 1.0) / 4.0),
        (3.0, 1) => Some(3.0 * PI * (l4 * l2 + 3.0 * l4 + 7.0 * l2 + 21.0) / 512.0),
        (2.0, 2) => Some((l4 + l2 + 1.0) / 6.0),
        (2.0, 3) => Some(PI * (5.0 * l4 + 2.0 * l2 + 1.0) / 32.0),
        _ => None,
    }
}

/// Explicit minimizers for the worked examples.
fn closed_form_lambda(params: &EmbeddingParams, r: f64) -> Result<Option<(f64, MinimumSource)>> {
    let (n, d) = (params.n(), params.d());
    let ir = 1.0 / r;
    let lambda = match (n, d) {
        (1.0, 1) => ((1.0 - 2.0 * ir) / (1.0 + 2.0 * ir)).sqrt(),
        (2.0, 2) => ((-ir + (1.0 - 3.0 * ir * ir).sqrt()) / (1.0 + 2.0 * ir)).sqrt(),
        (2.0, 3) => {
            ((1.0 - 6.0 * ir + 4.0 * (1.0 + 3.0 * ir - 9.0 * ir * ir).sqrt()) / (5.0 * (1.0 + 6.0 * ir))).sqrt()
        }
        (3.0, 1) => {
            let (root, iterations) = sextic_root(r)?;
            return Ok(Some((root, MinimumSource::PolynomialRoot { iterations })));
        }
        _ => return Ok(None),
    };
    Ok(Some((lambda, MinimumSource::ClosedForm)))
}

/// Positive root of `(5+2/r)λ⁶ + (9+6/r)λ⁴ + (7+14/r)λ² − (21−42/r)`, the
/// stationarity condition for `(n, d) = (3, 1)`.
fn sextic_root(r: f64) -> Result<(f64, usize)> {
    let ir = 1.0 / r;
    let coeffs = [5.0 + 2.0 * ir, 9.0 + 6.0 * ir, 7.0 + 14.0 * ir, -(21.0 - 42.0 * ir)];
    let sign_changes = coeffs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    if sign_changes != 1 {
        return Err(Error::domain(
            "phi_minimize",
            format!("stationarity polynomial has {sign_changes} sign changes at r = {r}; expected one positive root"),
        ));
    }
    let p = |l: f64| {
        let y = l * l;
        ((coeffs[0] * y + coeffs[1]) * y + coeffs[2]) * y + coeffs[3]
    };
    let (mut lo, mut hi) = (0.0, 2.0);
    if !(p(lo) < 0.0 && p(hi) > 0.0) {
        return Err(Error::Bracketing {
            lo,
            hi,
            message: "no sign change of the stationarity polynomial".into(),
        });
    }
    let mut iterations = 0;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if p(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok((0.5 * (lo + hi), iterations))
}

/// `(λ*, Φ)`, from the explicit minimizers when available (and enabled),
/// otherwise by numerical search.
pub fn phi_minimize(params: &EmbeddingParams, opts: &BoundOptions) -> Result<PhiMinimum> {
    let r = require_trial_range("phi_minimize", params)?;
    if opts.use_closed_forms {
        if let Some((lambda_star, source)) = closed_form_lambda(params, r)? {
            let phi_min = phi_by_route(params, lambda_star, PhiRoute::ExampleClosedForm, &opts.quadrature)?.value;
            return Ok(PhiMinimum {
                lambda_star,
                phi_min,
                source,
            });
        }
    }
    phi_minimize_numeric(params, opts)
}

/// `(λ*, Φ)` by grid scan plus Brent on `[10⁻³, 10³]`, extending the lower
/// end when the minimum sits against it (it drifts to 0 as `r → 2`).
pub fn phi_minimize_numeric(params: &EmbeddingParams, opts: &BoundOptions) -> Result<PhiMinimum> {
    require_trial_range("phi_minimize", params)?;
    let objective = |lambda: f64| phi(params, lambda, opts).map_or(f64::NAN, |p| p.value);
    let mut lo = 1e-3;
    let hi = 1e3;
    loop {
        match minimize_scalar_with(objective, (lo, hi), &opts.minimize) {
            Ok(m) => {
                return Ok(PhiMinimum {
                    lambda_star: m.arg_min,
                    phi_min: m.min_value,
                    source: MinimumSource::Numeric((&m).into()),
                })
            }
            Err(Error::Bracketing { .. }) if lo > 1e-12 && objective(lo) <= objective(hi) => lo *= 1e-3,
            Err(e) => return Err(e),
        }
    }
}

/// `ln` of `(Γ(d/2)/(2π^{d/2}))^{1/2−1/r} / (2^{n−1} Γ(n))`.
fn ln_norm_prefactor(params: &EmbeddingParams, r: f64) -> Result<f64> {
    let half_d = params.half_d();
    let n = params.n();
    let surface = ln_gamma(half_d)?.value - LN_2 - half_d * PI.ln();
    Ok((0.5 - 1.0 / r) * surface - (n - 1.0) * LN_2 - ln_gamma(n)?.value)
}

/// `S⁻` with its intermediates.
pub fn lower_bound(params: &EmbeddingParams, opts: &BoundOptions) -> Result<LowerBoundBreakdown> {
    let r = require_trial_range("lower_bound", params)?;
    let i_integral = i_integral(params, &opts.quadrature)?;
    let phi_min = phi_minimize(params, opts)?;
    let ln_s = ln_norm_prefactor(params, r)? + i_integral.ln_value / r - 0.5 * phi_min.phi_min.ln();
    Ok(LowerBoundBreakdown {
        params: *params,
        i_integral,
        i_value: i_integral.value(),
        phi_min,
        s_minus: ln_s.exp(),
    })
}

/// The two-sided bracket for any admissible triple.
pub fn bracket(params: &EmbeddingParams, opts: &BoundOptions) -> Result<BoundBracket> {
    let upper = upper_bound_breakdown(params)?;
    let s_plus = upper.s_plus;
    let sharp = |s: f64| BoundBracket {
        params: *params,
        s_minus: Some(s),
        s_plus: s,
        kind: BracketKind::Sharp,
        rel_uncertainty: Some(0.0),
        upper,
        lower: None,
    };
    match params.r() {
        Exponent::Finite(2.0) => Ok(sharp(1.0)),
        Exponent::Infinite => Ok(sharp(s_plus)),
        _ if params.has_trial_lower_bound() => {
            let lower = lower_bound(params, opts)?;
            let s_minus = lower.s_minus;
            Ok(BoundBracket {
                params: *params,
                s_minus: Some(s_minus),
                s_plus,
                kind: BracketKind::Estimated,
                rel_uncertainty: Some((s_plus - s_minus) / s_minus),
                upper,
                lower: Some(lower),
            })
        }
        _ => Ok(BoundBracket {
            params: *params,
            s_minus: None,
            s_plus,
            kind: BracketKind::UpperOnly,
            rel_uncertainty: None,
            upper,
            lower: None,
        }),
    }
}
