//! Scalar minimization on `(0, ∞)`.
//!
//! A log-spaced grid scan locates the basin of the global minimum inside the
//! search interval, Brent's method refines it, and a finite-difference Newton
//! step polishes the result below Brent's `√ε` floor.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeConfig {
    /// Absolute tolerance on the minimizer for the Brent stage.
    pub x_tol: f64,
    pub grid_points: usize,
    pub max_iterations: usize,
    /// Apply the Newton polish after Brent.
    pub polish: bool,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            x_tol: 1e-10,
            grid_points: 64,
            max_iterations: 200,
            polish: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizationResult {
    pub arg_min: f64,
    pub min_value: f64,
    /// Brent iterations.
    pub iterations: usize,
    /// Final bracket around `arg_min`; the function is no smaller than
    /// `min_value` at either end.
    pub bracket: (f64, f64),
    /// Strict interior local minima seen on the grid. More than one means the
    /// global minimum was chosen among several basins.
    pub local_minima: usize,
}

/// Minimizes `g` over `bracket = (lo, hi)` with `0 < lo < hi` and default
/// settings apart from `x_tol`.
pub fn minimize_scalar<G: Fn(f64) -> f64>(g: G, bracket: (f64, f64), x_tol: f64) -> Result<MinimizationResult> {
    minimize_scalar_with(
        g,
        bracket,
        &MinimizeConfig {
            x_tol,
            ..MinimizeConfig::default()
        },
    )
}

pub fn minimize_scalar_with<G: Fn(f64) -> f64>(
    g: G,
    bracket: (f64, f64),
    cfg: &MinimizeConfig,
) -> Result<MinimizationResult> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::domain(
            "minimize_scalar",
            format!("search interval must satisfy 0 < lo < hi < inf, got ({lo}, {hi})"),
        ));
    }
    if !(cfg.x_tol > 0.0) || cfg.grid_points < 3 {
        return Err(Error::domain("minimize_scalar", "x_tol must be positive and the grid at least 3 points"));
    }
    // non-finite values are treated as +inf so they never win
    let eval = |x: f64| {
        let y = g(x);
        if y.is_nan() {
            f64::INFINITY
        } else {
            y
        }
    };

    let n = cfg.grid_points;
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    let xs: Vec<f64> = (0..n)
        .map(|i| if i == n - 1 { hi } else { lo * (ratio * i as f64).exp() })
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| eval(x)).collect();
    let best = (0..n).fold(0, |b, i| if ys[i] < ys[b] { i } else { b });
    let local_minima = (1..n - 1)
        .filter(|&i| ys[i] < ys[i - 1] && ys[i] <= ys[i + 1])
        .count();
    if !ys[best].is_finite() {
        return Err(Error::Bracketing {
            lo,
            hi,
            message: "objective is not finite anywhere on the search grid".into(),
        });
    }
    if best == 0 || best == n - 1 {
        return Err(Error::Bracketing {
            lo,
            hi,
            message: format!(
                "grid minimum sits at the endpoint x = {:e} (value {:e}); widen the interval",
                xs[best], ys[best]
            ),
        });
    }

    let (a, b) = (xs[best - 1], xs[best + 1]);
    let (mut x, mut fx, iterations) = brent(&eval, a, xs[best], b, ys[best], cfg)?;
    if cfg.polish {
        for _ in 0..2 {
            match newton_step(&eval, x, fx, (a, b)) {
                Some((xn, fxn)) => {
                    x = xn;
                    fx = fxn;
                }
                None => break,
            }
        }
    }
    Ok(MinimizationResult {
        arg_min: x,
        min_value: fx,
        iterations,
        bracket: (a, b),
        local_minima,
    })
}

/// Brent's parabolic/golden-section minimizer on `[a, b]` starting from `x`.
fn brent<G: Fn(f64) -> f64>(
    g: &G,
    mut a: f64,
    x0: f64,
    mut b: f64,
    f0: f64,
    cfg: &MinimizeConfig,
) -> Result<(f64, f64, usize)> {
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let sqrt_eps = f64::EPSILON.sqrt();
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (f0, f0, f0);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for iter in 0..cfg.max_iterations {
        let m = 0.5 * (a + b);
        let tol = sqrt_eps * x.abs() + cfg.x_tol / 3.0;
        let tol2 = 2.0 * tol;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            return Ok((x, fx, iter));
        }
        let mut golden = true;
        if e.abs() > tol {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol } else { -tol };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol { x + d } else if d > 0.0 { x + tol } else { x - tol };
        let fu = g(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::Convergence {
        what: "Brent minimization",
        best_estimate: x,
        abs_error: b - a,
    })
}

/// One Newton step on central differences. Accepted only where the second
/// difference is positive, the step is small and the value does not increase.
fn newton_step<G: Fn(f64) -> f64>(g: &G, x: f64, fx: f64, bracket: (f64, f64)) -> Option<(f64, f64)> {
    let h = 1e-5 * x;
    let fp = g(x + h);
    let fm = g(x - h);
    let d1 = (fp - fm) / (2.0 * h);
    let d2 = (fp - 2.0 * fx + fm) / (h * h);
    if !(d2 > 0.0) || !d1.is_finite() {
        return None;
    }
    let step = -d1 / d2;
    let xn = x + step;
    if step == 0.0 || step.abs() > 1e-5 * x || xn <= bracket.0 || xn >= bracket.1 {
        return None;
    }
    let fxn = g(xn);
    (fxn <= fx).then_some((xn, fxn))
}
