//! Unbiased cumulant estimation (k-statistics) from gap samples.
//!
//! The accumulator keeps centered power sums and supports an exact merge, so
//! chunked/parallel accumulation reproduces the sequential result up to
//! floating-point reassociation. k_2 and k_3 are the unbiased estimators
//!   k_2 = M2 / (n-1),   k_3 = n M3 / ((n-1)(n-2)),
//! with M_j the centered sums Σ(x - x̄)^j.

use crate::error::{Error, Result};
use crate::exec;

/// A sample of triplet gaps Δ = d(a,n) - d(a,p), tagged with where it came
/// from. Construction validates finiteness and minimum length so the
/// estimators downstream never see junk.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSample {
    values: Vec<f64>,
    source_tag: String,
    seed: Option<u64>,
}

impl DeltaSample {
    /// k_3 needs n >= 3; we require one more so a zero divisor is never
    /// one malformed file away.
    pub const MIN_LEN: usize = 4;

    pub fn new(values: Vec<f64>, source_tag: impl Into<String>, seed: Option<u64>) -> Result<Self> {
        if values.len() < Self::MIN_LEN {
            return Err(Error::InsufficientSample {
                n: values.len(),
                min: Self::MIN_LEN,
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            values,
            source_tag: source_tag.into(),
            seed,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source_tag(&self) -> &str {
        &self.source_tag
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// Streaming mean and centered sums M2, M3 (Welford update, Pébay merge).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MomentAccumulator {
    n: u64,
    mean: f64,
    m2: f64,
    m3: f64,
}

impl MomentAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let n = self.n as f64;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let term = delta * delta_n * (n - 1.0);
        self.mean += delta_n;
        // M3 update must read the pre-update M2
        self.m3 += term * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term;
    }

    /// Exact combination of two accumulators, as if their inputs had been
    /// concatenated.
    pub fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let na = self.n as f64;
        let nb = other.n as f64;
        let n = na + nb;
        let delta = other.mean - self.mean;
        let delta2 = delta * delta;
        Self {
            n: self.n + other.n,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta2 * na * nb / n,
            m3: self.m3
                + other.m3
                + delta2 * delta * na * nb * (na - nb) / (n * n)
                + 3.0 * delta * (na * other.m2 - nb * self.m2) / n,
        }
    }

    /// Chunked accumulation with a fixed reduction order; parallel when the
    /// `parallel` feature is on, identical output either way.
    pub fn from_values(values: &[f64]) -> Self {
        exec::map_chunks(values, Self::from_values_seq)
            .into_iter()
            .fold(Self::new(), Self::merge)
    }

    /// Plain single-pass accumulation, kept as the baseline the chunked path
    /// is benchmarked and tested against.
    pub fn from_values_seq(values: &[f64]) -> Self {
        let mut acc = Self::new();
        for &x in values {
            acc.push(x);
        }
        acc
    }

    /// Unbiased cumulant estimates from the accumulated sums.
    pub fn summary(&self) -> Result<CumulantSummary> {
        if self.n < DeltaSample::MIN_LEN as u64 {
            return Err(Error::InsufficientSample {
                n: self.n as usize,
                min: DeltaSample::MIN_LEN,
            });
        }
        let n = self.n as f64;
        if self.m2 <= 0.0 {
            // exactly zero for a constant sample; the update formulas
            // cannot produce a negative M2
            return Err(Error::ZeroVariance);
        }
        let variance = self.m2 / (n - 1.0);
        let kappa3 = self.m3 * n / ((n - 1.0) * (n - 2.0));
        CumulantSummary::new(self.mean, variance, kappa3, self.n)
    }
}

/// Estimated mean, variance and third cumulant of a gap distribution,
/// with the derived skewness γ₃ = κ₃ / σ³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CumulantSummary {
    mean: f64,
    variance: f64,
    kappa3: f64,
    skewness: f64,
    n_samples: u64,
}

impl CumulantSummary {
    pub fn new(mean: f64, variance: f64, kappa3: f64, n_samples: u64) -> Result<Self> {
        for (name, value) in [("mean", mean), ("variance", variance), ("kappa3", kappa3)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { what: name, value });
            }
        }
        if variance < 0.0 {
            return Err(Error::InvalidParameter {
                name: "variance",
                value: variance,
                requirement: "must be >= 0",
            });
        }
        if n_samples < DeltaSample::MIN_LEN as u64 {
            return Err(Error::InsufficientSample {
                n: n_samples as usize,
                min: DeltaSample::MIN_LEN,
            });
        }
        let skewness = if variance > 0.0 {
            kappa3 / (variance * variance.sqrt())
        } else {
            0.0
        };
        Ok(Self {
            mean,
            variance,
            kappa3,
            skewness,
            n_samples,
        })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn sigma(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn kappa3(&self) -> f64 {
        self.kappa3
    }

    pub fn skewness(&self) -> f64 {
        self.skewness
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    /// (x - mean) / sigma; errors when the variance is zero.
    pub fn standardize(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                what: "x",
                value: x,
            });
        }
        if self.variance == 0.0 {
            return Err(Error::ZeroVariance);
        }
        Ok((x - self.mean) / self.sigma())
    }
}

/// Unbiased cumulant estimates for a validated gap sample.
pub fn estimate_cumulants(sample: &DeltaSample) -> Result<CumulantSummary> {
    MomentAccumulator::from_values(sample.values()).summary()
}
