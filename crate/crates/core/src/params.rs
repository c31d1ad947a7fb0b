//! The `(r, n, d)` triple and its admissibility classes.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Lebesgue exponent `r ∈ [2, ∞]`.
///
/// All exponent arithmetic goes through [`Exponent::recip`], with `1/∞ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(r) => 1.0 / r,
            Exponent::Infinite => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(r) => Some(r),
            Exponent::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// The value as a float, `f64::INFINITY` for `r = ∞`.
    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(r) => r,
            Exponent::Infinite => f64::INFINITY,
        }
    }
}

impl From<f64> for Exponent {
    fn from(r: f64) -> Self {
        if r == f64::INFINITY {
            Exponent::Infinite
        } else {
            Exponent::Finite(r)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{r}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => Ok(Exponent::Infinite),
            _ => t
                .parse::<f64>()
                .ok()
                .filter(|r| r.is_finite())
                .map(Exponent::Finite)
                .ok_or_else(|| format!("invalid exponent '{s}': expected a number or 'inf'")),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(r) => serializer.serialize_f64(*r),
            Exponent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Which of the imbedding regimes a triple falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Admissibility {
    /// `n = 0`, `r = 2`.
    R2Only,
    /// `0 < n < d/2`, `2 ≤ r < d/(d/2 − n)`.
    Subcritical,
    /// `n = d/2`, `2 ≤ r < ∞`.
    Critical,
    /// `n > d/2`, `2 ≤ r ≤ ∞`.
    Supercritical,
    Inadmissible(Inadmissible),
}

/// The condition a rejected triple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inadmissible {
    ExponentBelowTwo,
    NegativeOrder,
    ZeroDimension,
    /// `n = 0` only allows `r = 2`.
    ZeroOrderRequiresL2,
    /// `0 < n < d/2` needs `r < d/(d/2 − n)`; the limit itself is excluded.
    SubcriticalExponentTooLarge,
    /// `n = d/2` excludes `r = ∞`.
    CriticalInfiniteExponent,
    NotANumber,
}

impl fmt::Display for Inadmissible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Inadmissible::ExponentBelowTwo => "r must satisfy r >= 2",
            Inadmissible::NegativeOrder => "n must satisfy n >= 0",
            Inadmissible::ZeroDimension => "d must be a positive integer",
            Inadmissible::ZeroOrderRequiresL2 => "n = 0 requires r = 2",
            Inadmissible::SubcriticalExponentTooLarge => {
                "0 < n < d/2 requires 2 <= r < d/(d/2 - n)"
            }
            Inadmissible::CriticalInfiniteExponent => "n = d/2 requires 2 <= r < infinity",
            Inadmissible::NotANumber => "parameters must not be NaN",
        };
        f.write_str(msg)
    }
}

/// Classifies `(r, n, d)`. Total: never fails, inadmissible input is a class.
pub fn classify(r: Exponent, n: f64, d: u32) -> Admissibility {
    use Admissibility::*;
    if n.is_nan() || r.as_f64().is_nan() {
        return Inadmissible(self::Inadmissible::NotANumber);
    }
    if d == 0 {
        return Inadmissible(self::Inadmissible::ZeroDimension);
    }
    if r.as_f64() < 2.0 {
        return Inadmissible(self::Inadmissible::ExponentBelowTwo);
    }
    if n < 0.0 || !n.is_finite() {
        return Inadmissible(self::Inadmissible::NegativeOrder);
    }
    let half_d = f64::from(d) / 2.0;
    if n == 0.0 {
        return if r == Exponent::Finite(2.0) {
            R2Only
        } else {
            Inadmissible(self::Inadmissible::ZeroOrderRequiresL2)
        };
    }
    if n > half_d {
        return Supercritical;
    }
    if n == half_d {
        return if r.is_infinite() {
            Inadmissible(self::Inadmissible::CriticalInfiniteExponent)
        } else {
            Critical
        };
    }
    // 0 < n < d/2: r < d/(d/2 − n)  ⇔  1/r > (d/2 − n)/d
    if r.recip() > (half_d - n) / f64::from(d) {
        Subcritical
    } else {
        Inadmissible(self::Inadmissible::SubcriticalExponentTooLarge)
    }
}

/// A validated, admissible `(r, n, d)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingParams {
    r: Exponent,
    n: f64,
    d: u32,
    #[serde(skip)]
    class: Admissibility,
}

impl EmbeddingParams {
    pub fn new(r: impl Into<Exponent>, n: f64, d: u32) -> Result<Self> {
        let r = r.into();
        match classify(r, n, d) {
            Admissibility::Inadmissible(why) => Err(Error::Inadmissible(why)),
            class => Ok(EmbeddingParams { r, n, d, class }),
        }
    }

    pub fn r(&self) -> Exponent {
        self.r
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn half_d(&self) -> f64 {
        f64::from(self.d) / 2.0
    }

    pub fn class(&self) -> Admissibility {
        self.class
    }

    pub fn is_supercritical(&self) -> bool {
        self.class == Admissibility::Supercritical
    }

    /// Finite `r` strictly between 2 and ∞ with `n > d/2`: the range where
    /// trial-function lower bounds are available.
    pub fn has_trial_lower_bound(&self) -> bool {
        self.is_supercritical() && matches!(self.r, Exponent::Finite(r) if r > 2.0)
    }

    /// `s = 2/(1 − 2/r)`, the exponent paired with `r` by `1/r + 1/p = 1`,
    /// `1/s + 1/2 = 1/p`. Infinite at `r = 2`.
    pub fn s_conjugate(&self) -> f64 {
        2.0 / (1.0 - 2.0 * self.r.recip())
    }

    /// Hölder conjugate `p` of `r`.
    pub fn p_conjugate(&self) -> f64 {
        1.0 / (1.0 - self.r.recip())
    }
}

impl fmt::Display for EmbeddingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, n={}, d={})", self.r, self.n, self.d)
    }
}
