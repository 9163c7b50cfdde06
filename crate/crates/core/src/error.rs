use thiserror::Error;

/// Everything that can go wrong in this crate. Numeric kernels that only see
/// already-validated values stay infallible; validation happens at the edges.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("order {order} is not supported; orders 0..=4 are implemented")]
    UnsupportedOrder { order: usize },

    #[error("invalid interval [{lo}, {hi}]: endpoints must be finite with lo <= hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("sample has {n} values but at least {min} are required")]
    InsufficientSample { n: usize, min: usize },

    #[error("sample value at index {index} is not finite")]
    NonFiniteSample { index: usize },

    #[error("sample variance is zero; standardization and the expansion are undefined")]
    ZeroVariance,

    #[error("margin alpha = {alpha} is invalid; the margin must be finite and > 0")]
    InvalidMargin { alpha: f64 },

    #[error("{name} = {value} is invalid: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("integrand is not finite at t = {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error(
        "quadrature did not converge within depth {max_depth}: \
         best estimate {best}, error estimate {error_estimate}"
    )]
    QuadratureDidNotConverge {
        best: f64,
        error_estimate: f64,
        max_depth: usize,
    },

    #[error("no batch-mean law is available for the {family} family")]
    UnsupportedBatchLaw { family: &'static str },

    #[error("expanded loss {loss} is not positive; no finite batch size satisfies the criterion")]
    NonPositiveLoss { loss: f64 },

    #[error("scaling fit needs at least 3 points, got {n}")]
    TooFewPoints { n: usize },

    #[error("scaling fit point {index} is invalid: {requirement}")]
    InvalidPoint {
        index: usize,
        requirement: &'static str,
    },

    #[error("scaling fit needs at least two distinct sample sizes")]
    DegenerateScalingFit,
}

pub type Result<T> = std::result::Result<T, Error>;
