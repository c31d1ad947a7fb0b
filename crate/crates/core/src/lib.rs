#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds_lower;
pub mod bounds_upper;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod numerics;
pub mod params;
pub mod specfun;

pub use bounds_lower::{
    bracket, i_integral, lower_bound, phi, phi_minimize, BoundBracket, BoundOptions, BracketKind, PhiRoute,
};
pub use bounds_upper::{hausdorff_young_constant, radial_weight_integral, upper_bound};
pub use error::{Error, Result};
pub use params::{classify, Admissibility, EmbeddingParams, Exponent, Inadmissible};
