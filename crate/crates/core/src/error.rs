use thiserror::Error;

use crate::quadrature::IntegralResult;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value is finite mathematically but does not fit in an `f64`.
    #[error("overflow: {0} is not representable as a double")]
    Overflow(String),

    /// An integrand returned NaN or an infinity at a quadrature node.
    #[error("integrand is not finite at node x = {node:e}")]
    NonFinite { node: f64 },

    /// The adaptive integrator ran out of evaluations or refinement levels.
    #[error(
        "integration did not converge within budget: best estimate {:e} ± {:e} after {} evaluations",
        best.value, best.abs_error_estimate, best.evaluations
    )]
    Budget { best: IntegralResult },

    /// An asymptotic predictor was asked for parameters outside its class.
    #[error("unsupported asymptotic class for `{measure}`: requires {requirement}")]
    UnsupportedClass { measure: &'static str, requirement: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
