//! Real special functions: log-gamma, beta, the Macdonald function `K_ν`,
//! Gauss' `₂F₁` and `E(s) = s^s`.
//!
//! Every evaluator returns a [`SpecFunResult`] carrying an absolute error
//! estimate next to the value, so downstream code can propagate error budgets
//! instead of guessing them.

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{bessel_k, bessel_k_power, half_integer_order};
pub use gamma::{beta, binomial, e_power, gamma, ln_gamma, rgamma};
pub use hypergeometric::hyp2f1;

pub(crate) use gamma::beta_signed;

use crate::error::{Error, Result};

/// A special-function value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult {
    pub value: f64,
    pub abs_error_estimate: f64,
}

impl SpecFunResult {
    pub(crate) fn checked(function: &'static str, value: f64, abs_error: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::range(
                function,
                format!("result is not representable ({value})"),
            ));
        }
        Ok(SpecFunResult {
            value,
            abs_error_estimate: if abs_error.is_finite() {
                abs_error.abs()
            } else {
                f64::MAX
            },
        })
    }

    /// Relative error estimate; infinite when the value is zero but the error is not.
    pub fn rel_error_estimate(&self) -> f64 {
        if self.abs_error_estimate == 0.0 {
            0.0
        } else {
            self.abs_error_estimate / self.value.abs()
        }
    }
}
