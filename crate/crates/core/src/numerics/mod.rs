//! Quadrature and scalar minimization.

mod minimize;
mod quadrature;

pub use minimize::{minimize_scalar, minimize_scalar_with, MinimizationResult, MinimizeConfig};
pub use quadrature::{
    integrate, integrate_beta_weighted, integrate_semiline, integrate_semiline_truncated, QuadratureConfig,
    QuadratureResult,
};
