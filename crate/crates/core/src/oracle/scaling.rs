//! Log-log least-squares fit of error-vs-N points, used to check that the
//! truncation error of the expansion decays like C/N.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    /// Slope of ln(error) against ln(n); ~ -1 for a C/N law.
    pub slope: f64,
    /// Intercept; exp(intercept) estimates the constant C.
    pub intercept: f64,
    /// Coefficient of determination of the log-log fit.
    pub r_squared: f64,
    /// The (n, error) points the fit was computed from.
    pub points: Vec<(u64, f64)>,
}

impl ScalingFit {
    /// exp(intercept): the estimated constant in error ~ C * n^slope.
    pub fn amplitude(&self) -> f64 {
        self.intercept.exp()
    }
}

/// Least squares on (ln n, ln error). Needs >= 3 points with n >= 1 and
/// error > 0, and at least two distinct n.
pub fn error_scaling_fit(points: &[(u64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { n: points.len() });
    }
    for (index, &(n, err)) in points.iter().enumerate() {
        if n < 1 {
            return Err(Error::InvalidPoint {
                index,
                requirement: "sample size must be >= 1",
            });
        }
        if !(err.is_finite() && err > 0.0) {
            return Err(Error::InvalidPoint {
                index,
                requirement: "error must be finite and > 0",
            });
        }
    }

    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, err)| ((n as f64).ln(), err.ln()))
        .collect();
    let m = logs.len() as f64;
    let x_bar = logs.iter().map(|&(x, _)| x).sum::<f64>() / m;
    let y_bar = logs.iter().map(|&(_, y)| y).sum::<f64>() / m;
    let sxx = logs
        .iter()
        .map(|&(x, _)| (x - x_bar) * (x - x_bar))
        .sum::<f64>();
    if sxx == 0.0 {
        return Err(Error::DegenerateScalingFit);
    }
    let sxy = logs
        .iter()
        .map(|&(x, y)| (x - x_bar) * (y - y_bar))
        .sum::<f64>();
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;

    let ss_tot = logs
        .iter()
        .map(|&(_, y)| (y - y_bar) * (y - y_bar))
        .sum::<f64>();
    let ss_res = logs
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>();
    // all responses equal: the flat fit is exact, call it a perfect fit
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };

    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
        points: points.to_vec(),
    })
}
