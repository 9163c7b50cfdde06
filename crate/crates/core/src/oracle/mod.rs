//! Independent ground truth: adaptive quadrature, Monte-Carlo estimators and
//! an error-scaling fit. The closed-form expansion is validated against this
//! module, so nothing here may call into `edgeworth`.

mod mc;
mod quadrature;
mod scaling;

pub use mc::{
    bootstrap_se, semi_hard_loss, semi_hard_loss_seq, semi_hard_probability,
    semi_hard_probability_seq, McEstimate,
};
pub use quadrature::{quadrature, QuadratureResult, DEFAULT_TOL, MAX_DEPTH};
pub use scaling::{error_scaling_fit, ScalingFit};
