//! Monte-Carlo estimators over a slice of gap draws, plus a bootstrap
//! standard-error helper. These are validation oracles: they must stay
//! independent of the closed-form expansion code.

use crate::error::{Error, Result};
use crate::exec;

/// A Monte-Carlo estimate with its plug-in standard error.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub value: f64,
    /// sqrt(plug-in variance / n); the usual 1/sqrt(n) error bar.
    pub std_error: f64,
    pub n: usize,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMargin { alpha })
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InsufficientSample { n: 0, min: 1 });
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample { index });
    }
    Ok(())
}

/// Mean and SE of g over `values`, chunked so the reduction order is fixed.
fn estimate<G>(values: &[f64], g: G) -> McEstimate
where
    G: Fn(f64) -> f64 + Sync,
{
    let partials = exec::map_chunks(values, |chunk| {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for &v in chunk {
            let y = g(v);
            sum += y;
            sum_sq += y * y;
        }
        (sum, sum_sq)
    });
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((0.0, 0.0), |(s, q), (cs, cq)| (s + cs, q + cq));
    finish(sum, sum_sq, values.len())
}

fn estimate_seq<G>(values: &[f64], g: G) -> McEstimate
where
    G: Fn(f64) -> f64,
{
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for &v in values {
        let y = g(v);
        sum += y;
        sum_sq += y * y;
    }
    finish(sum, sum_sq, values.len())
}

fn finish(sum: f64, sum_sq: f64, n: usize) -> McEstimate {
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    McEstimate {
        value: mean,
        std_error: (var / nf).sqrt(),
        n,
    }
}

/// Semi-hard hinge applied to one gap draw: (α - Δ) if Δ lies strictly
/// inside the window (0, α), else 0.
#[inline]
fn hinge(alpha: f64, delta: f64) -> f64 {
    if delta > 0.0 && delta < alpha {
        alpha - delta
    } else {
        0.0
    }
}

/// Monte-Carlo estimate of E[(α - Δ) 1{0 < Δ < α}].
pub fn semi_hard_loss(values: &[f64], alpha: f64) -> Result<McEstimate> {
    check_alpha(alpha)?;
    check_values(values)?;
    Ok(estimate(values, |d| hinge(alpha, d)))
}

/// Single-threaded single-pass variant kept for benchmarking the chunked path.
pub fn semi_hard_loss_seq(values: &[f64], alpha: f64) -> Result<McEstimate> {
    check_alpha(alpha)?;
    check_values(values)?;
    Ok(estimate_seq(values, |d| hinge(alpha, d)))
}

/// Monte-Carlo estimate of P(0 < Δ < α).
pub fn semi_hard_probability(values: &[f64], alpha: f64) -> Result<McEstimate> {
    check_alpha(alpha)?;
    check_values(values)?;
    Ok(estimate(values, |d| f64::from(d > 0.0 && d < alpha)))
}

pub fn semi_hard_probability_seq(values: &[f64], alpha: f64) -> Result<McEstimate> {
    check_alpha(alpha)?;
    check_values(values)?;
    Ok(estimate_seq(values, |d| f64::from(d > 0.0 && d < alpha)))
}

/// Bootstrap standard error of an arbitrary statistic: `resamples` draws with
/// replacement, each resample on its own RNG stream so the result does not
/// depend on thread count.
pub fn bootstrap_se<S>(values: &[f64], statistic: S, resamples: usize, seed: u64) -> Result<f64>
where
    S: Fn(&[f64]) -> f64 + Sync,
{
    check_values(values)?;
    if resamples < 2 {
        return Err(Error::InvalidParameter {
            name: "resamples",
            value: resamples as f64,
            requirement: "must be at least 2",
        });
    }
    let n = values.len();
    let stats = exec::map_indices(resamples, |i| {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut resample = Vec::with_capacity(n);
        for _ in 0..n {
            resample.push(values[rng.random_range(0..n)]);
        }
        statistic(&resample)
    });
    let b = stats.len() as f64;
    let mean = stats.iter().sum::<f64>() / b;
    let var = stats.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (b - 1.0);
    Ok(var.sqrt())
}
