//! Adaptive 21-point Gauss-Kronrod quadrature.
//!
//! One adaptive core works on a finite interval with initial breakpoints;
//! the public entry points reduce the semi-infinite and endpoint-singular
//! integrals used by the bound computations to that form.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::domain(
                "quadrature",
                format!(
                    "tolerances must be positive and the budget non-zero, got abs={} rel={} max={}",
                    self.abs_tol, self.rel_tol, self.max_subdivisions
                ),
            ));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// Number of panels in the final partition.
    pub subdivisions: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::domain("quadrature", format!("integrand is not finite at x = {x:e}")))
        }
    };
    let f_center = eval(center)?;
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for (j, wg) in WG.iter().enumerate() {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_kronrod += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_kronrod * half;
    let error = rescale_error(
        (res_kronrod - res_gauss) * half,
        res_abs * half.abs(),
        res_asc * half.abs(),
    );
    Ok(Panel { a, b, value, error })
}

/// Adaptive bisection over `[breakpoints[0], breakpoints[last]]`, always
/// splitting the panel with the largest error estimate.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
    what: &'static str,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(f, w[0], w[1])?);
        }
    }
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if error <= cfg.target(value) {
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: error,
                subdivisions: heap.len().max(1),
            });
        }
        let worst = match heap.peek() {
            Some(p) => *p,
            None => {
                return Ok(QuadratureResult {
                    value: 0.0,
                    abs_error_estimate: 0.0,
                    subdivisions: 1,
                })
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if heap.len() >= cfg.max_subdivisions || mid <= worst.a || mid >= worst.b {
            return Err(Error::Convergence {
                what,
                best_estimate: value,
                abs_error: error,
            });
        }
        heap.pop();
        heap.push(gk21(f, worst.a, mid)?);
        heap.push(gk21(f, mid, worst.b)?);
    }
}

/// `∫_a^b f`. Integrable endpoint singularities are allowed: the rule never
/// evaluates `f` at the endpoints.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::domain("integrate", format!("need finite a < b, got [{a}, {b}]")));
    }
    adaptive(&f, &[a, b], cfg, "adaptive quadrature")
}

/// `∫_0^∞ f`. The piece over `[1, ∞)` is folded onto a finite interval by
/// `x = 1/(2 − u)`, which handles both exponential and algebraic decay.
pub fn integrate_semiline<F: Fn(f64) -> f64>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let folded = |u: f64| {
        if u <= 1.0 {
            f(u)
        } else {
            let w = 2.0 - u;
            let x = 1.0 / w;
            let y = f(x);
            if y == 0.0 {
                0.0
            } else {
                y / (w * w)
            }
        }
    };
    adaptive(&folded, &[0.0, 1.0, 2.0], cfg, "semi-infinite quadrature")
}

/// `∫_0^∞ f` for integrands with a known bound on their tail.
///
/// `tail_bound(T)` must bound `|∫_T^∞ f|`. The cutoff `T` is doubled until the
/// bound is below a tenth of the requested tolerance; the bound is then added
/// to the returned error estimate, so truncation is certified rather than
/// guessed.
pub fn integrate_semiline_truncated<F, B>(f: F, tail_bound: B, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let head = adaptive(&f, &[0.0, 1.0], cfg, "truncated quadrature")?;
    let target = 0.1 * cfg.target(head.value);
    let mut cutoff = 2.0;
    let mut breakpoints = vec![0.0, 1.0, 2.0];
    while !(tail_bound(cutoff) <= target) {
        cutoff *= 2.0;
        breakpoints.push(cutoff);
        if cutoff > 1e6 {
            return Err(Error::Convergence {
                what: "tail truncation",
                best_estimate: head.value,
                abs_error: tail_bound(cutoff),
            });
        }
    }
    let tail = tail_bound(cutoff).max(0.0);
    let body = adaptive(&f, &breakpoints, cfg, "truncated quadrature")?;
    Ok(QuadratureResult {
        value: body.value,
        abs_error_estimate: body.abs_error_estimate + tail,
        subdivisions: body.subdivisions,
    })
}

/// `∫_0^1 x^{a−1} (1−x)^{b−1} g(x) dx` for `a, b > 0` and smooth `g`.
///
/// The endpoint powers are removed by `x = v^{1/a}` on `[0, 1/2]` and
/// `1 − x = w^{1/b}` on `[1/2, 1]`, leaving bounded integrands.
pub fn integrate_beta_weighted<G: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    g: G,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(
            "integrate_beta_weighted",
            format!("endpoint exponents must be positive, got a={a}, b={b}"),
        ));
    }
    let left = 0.5f64.powf(a);
    let right = 0.5f64.powf(b);
    let mapped = |u: f64| {
        if u <= left {
            let x = u.powf(1.0 / a);
            (1.0 - x).powf(b - 1.0) * g(x) / a
        } else {
            let y = (u - left).powf(1.0 / b);
            let x = 1.0 - y;
            x.powf(a - 1.0) * g(x) / b
        }
    };
    adaptive(&mapped, &[0.0, left, left + right], cfg, "beta-weighted quadrature")
}
