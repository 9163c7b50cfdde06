//! Edgeworth-expansion analysis of the semi-hard triplet loss.
//!
//! The gap Δ = d(anchor, negative) − d(anchor, positive) of a random triplet
//! has some law with mean μ, scale σ and skewness γ₃. A batch mean of N such
//! gaps is nearly Gaussian, and the first-order Edgeworth correction captures
//! how its skewness perturbs the semi-hard loss
//!     L(α) = E[(α − Δ) 1{0 < Δ < α}].
//! This crate estimates the cumulants (`cumulants`), evaluates the expansion
//! and the closed-form loss terms (`edgeworth`), and validates both against
//! independent quadrature/Monte-Carlo ground truth (`oracle`) on reference
//! laws with known cumulants (`distributions`).
//!
//! Everything randomized is chunk-seeded and order-fixed: results are
//! identical across thread counts, and with the `parallel` feature disabled
//! the same numbers fall out of a purely sequential build.

pub mod cumulants;
pub mod distributions;
mod error;
mod exec;
pub mod oracle;
pub mod special;

pub mod edgeworth;

pub use cumulants::{estimate_cumulants, CumulantSummary, DeltaSample, MomentAccumulator};
pub use edgeworth::{Convention, EdgeworthModel, LossExpansion};
pub use error::{Error, Result};
