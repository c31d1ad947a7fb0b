use thiserror::Error;

use crate::params::Inadmissible;

/// Errors raised anywhere in the library.
///
/// The variants fall into two families: domain problems (bad arguments, an
/// inadmissible `(r, n, d)` triple, a route whose preconditions fail) and
/// numerical failures (quadrature or minimization that did not converge).
/// [`Error::is_convergence`] tells them apart for callers that map errors to
/// exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {message}")]
    Domain {
        function: &'static str,
        message: String,
    },

    #[error("range error in {function}: {message}")]
    Range {
        function: &'static str,
        message: String,
    },

    #[error("inadmissible parameters: {0}")]
    Inadmissible(Inadmissible),

    #[error("singular parameters in {function}: {message}")]
    SingularParameter {
        function: &'static str,
        message: String,
    },

    #[error("route {route} unavailable: {message}")]
    Route {
        route: &'static str,
        message: String,
    },

    #[error(
        "{what} did not converge (best estimate {best_estimate:e}, error estimate {abs_error:e})"
    )]
    Convergence {
        what: &'static str,
        best_estimate: f64,
        abs_error: f64,
    },

    #[error("internal consistency check failed for {what}: relative discrepancy {discrepancy:e}")]
    Consistency { what: &'static str, discrepancy: f64 },

    #[error("no interior minimum in [{lo:e}, {hi:e}]: {message}")]
    Bracketing { lo: f64, hi: f64, message: String },
}

impl Error {
    pub(crate) fn domain(function: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            function,
            message: message.into(),
        }
    }

    pub(crate) fn range(function: &'static str, message: impl Into<String>) -> Self {
        Error::Range {
            function,
            message: message.into(),
        }
    }

    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::Bracketing { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
