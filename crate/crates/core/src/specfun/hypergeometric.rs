use super::SpecFunResult;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 1_000_000;

/// Outcome of summing the Gauss series: value, rigorous tail bound plus
/// rounding estimate, and the number of terms used.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    pub abs_error: f64,
    #[cfg_attr(not(test), allow(dead_code))]
    pub terms: usize,
}

/// Partial sums of `Σ_k (a)_k (b)_k / ((c)_k k!) z^k`.
///
/// Stops once the remainder is provably below `ε·|sum|`: for `k > |c|` the
/// term ratio is bounded by `q_k = z (k+|a|)/(k−|c|) · max(1, (k+|b|)/(k+1))`,
/// which is non-increasing in `k`, so the tail after term `k` is at most
/// `|t_k| q_k / (1 − q_k)` once `q_k < 1`. With `max_terms` set, summation
/// stops there instead and no tail bound is attempted.
pub(crate) fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, max_terms: Option<usize>) -> Result<SeriesSum> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut abs_sum = 1.0_f64;
    let limit = max_terms.unwrap_or(MAX_TERMS);
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    for k in 0..limit {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        abs_sum += term.abs();
        if !sum.is_finite() {
            return Err(Error::range("hyp2f1", "series overflowed"));
        }
        if term == 0.0 {
            // terminating series
            return Ok(SeriesSum {
                value: sum,
                abs_error: 4.0 * f64::EPSILON * abs_sum,
                terms: k + 1,
            });
        }
        if max_terms.is_none() {
            let next = kf + 1.0;
            if next > ac {
                let q = z * (next + aa) / (next - ac) * ((next + ab) / (next + 1.0)).max(1.0);
                if q < 1.0 {
                    let tail = term.abs() * q / (1.0 - q);
                    if tail <= f64::EPSILON * sum.abs() {
                        return Ok(SeriesSum {
                            value: sum,
                            abs_error: tail + 4.0 * f64::EPSILON * abs_sum,
                            terms: k + 1,
                        });
                    }
                }
            }
        }
    }
    if max_terms.is_some() {
        return Ok(SeriesSum {
            value: sum,
            abs_error: f64::INFINITY,
            terms: limit,
        });
    }
    Err(Error::Convergence {
        what: "hyp2f1 series",
        best_estimate: sum,
        abs_error: f64::INFINITY,
    })
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for `0 ≤ z < 1` by its
/// power series.
///
/// The error estimate is the certified truncation bound plus a rounding
/// estimate proportional to `Σ|t_k|`, so it grows honestly when the series
/// cancels (for instance with `c` close to a negative integer).
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<SpecFunResult> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain("hyp2f1", format!("z must lie in [0, 1), got {z}")));
    }
    if c <= 0.0 && c == c.floor() {
        return Err(Error::SingularParameter {
            function: "hyp2f1",
            message: format!("c = {c} is a non-positive integer"),
        });
    }
    if ![a, b, c].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("hyp2f1", "parameters must be finite"));
    }
    if z == 0.0 {
        return Ok(SpecFunResult {
            value: 1.0,
            abs_error_estimate: 0.0,
        });
    }
    let s = hyp2f1_series(a, b, c, z, None)?;
    SpecFunResult::checked("hyp2f1", s.value, s.abs_error)
}
