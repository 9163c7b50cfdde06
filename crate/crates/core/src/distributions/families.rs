//! Reference laws with closed-form cumulants: Normal, shifted Gamma, and a
//! two-component normal mixture. Gamma and Normal are closed under averaging,
//! which yields an *exact* law for batch means — the fulcrum of the error
//! scaling tests.

use std::fmt;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal, StandardNormal};
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::cumulants::DeltaSample;
use crate::edgeworth::{Convention, EdgeworthModel};
use crate::error::{Error, Result};
use crate::exec::{self, CHUNK_LEN};
use crate::special::{big_phi, phi, Interval};

#[derive(Clone, Copy, Debug, PartialEq)]
enum Family {
    Normal {
        mean: f64,
        sigma: f64,
    },
    ShiftedGamma {
        shape: f64,
        scale: f64,
        shift: f64,
    },
    NormalMixture {
        weight: f64,
        mean1: f64,
        sigma1: f64,
        mean2: f64,
        sigma2: f64,
    },
}

/// A distribution for the gap Δ with analytically known mean, variance and
/// third cumulant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceDistribution {
    family: Family,
}

fn require(cond: bool, name: &'static str, value: f64, requirement: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            requirement,
        })
    }
}

impl ReferenceDistribution {
    pub fn normal(mean: f64, sigma: f64) -> Result<Self> {
        require(mean.is_finite(), "mean", mean, "must be finite")?;
        require(
            sigma.is_finite() && sigma > 0.0,
            "sigma",
            sigma,
            "must be finite and > 0",
        )?;
        Ok(Self {
            family: Family::Normal { mean, sigma },
        })
    }

    pub fn shifted_gamma(shape: f64, scale: f64, shift: f64) -> Result<Self> {
        require(
            shape.is_finite() && shape > 0.0,
            "shape",
            shape,
            "must be finite and > 0",
        )?;
        require(
            scale.is_finite() && scale > 0.0,
            "scale",
            scale,
            "must be finite and > 0",
        )?;
        require(shift.is_finite(), "shift", shift, "must be finite")?;
        Ok(Self {
            family: Family::ShiftedGamma {
                shape,
                scale,
                shift,
            },
        })
    }

    pub fn normal_mixture(
        weight: f64,
        mean1: f64,
        sigma1: f64,
        mean2: f64,
        sigma2: f64,
    ) -> Result<Self> {
        require(
            weight.is_finite() && weight > 0.0 && weight < 1.0,
            "weight",
            weight,
            "must lie strictly inside (0, 1)",
        )?;
        require(mean1.is_finite(), "mean1", mean1, "must be finite")?;
        require(mean2.is_finite(), "mean2", mean2, "must be finite")?;
        require(
            sigma1.is_finite() && sigma1 > 0.0,
            "sigma1",
            sigma1,
            "must be finite and > 0",
        )?;
        require(
            sigma2.is_finite() && sigma2 > 0.0,
            "sigma2",
            sigma2,
            "must be finite and > 0",
        )?;
        Ok(Self {
            family: Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            },
        })
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Normal { .. } => "normal",
            Family::ShiftedGamma { .. } => "shifted-gamma",
            Family::NormalMixture { .. } => "normal-mixture",
        }
    }

    pub fn mean(&self) -> f64 {
        match self.family {
            Family::Normal { mean, .. } => mean,
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => shift + shape * scale,
            Family::NormalMixture {
                weight,
                mean1,
                mean2,
                ..
            } => weight * mean1 + (1.0 - weight) * mean2,
        }
    }

    pub fn variance(&self) -> f64 {
        match self.family {
            Family::Normal { sigma, .. } => sigma * sigma,
            Family::ShiftedGamma { shape, scale, .. } => shape * scale * scale,
            Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            } => {
                // second raw moment of the mixture minus the squared mean
                let m = weight * mean1 + (1.0 - weight) * mean2;
                let m2 = weight * (mean1 * mean1 + sigma1 * sigma1)
                    + (1.0 - weight) * (mean2 * mean2 + sigma2 * sigma2);
                m2 - m * m
            }
        }
    }

    pub fn sigma(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Third cumulant κ₃ = E[(X − μ)³].
    pub fn kappa3(&self) -> f64 {
        match self.family {
            Family::Normal { .. } => 0.0,
            Family::ShiftedGamma { shape, scale, .. } => 2.0 * shape * scale * scale * scale,
            Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            } => {
                // κ₃ = E[X³] − 3 μ E[X²] + 2 μ³, with normal component
                // moments E[Xᵢ³] = μᵢ³ + 3 μᵢ σᵢ²
                let m = weight * mean1 + (1.0 - weight) * mean2;
                let m2 = weight * (mean1 * mean1 + sigma1 * sigma1)
                    + (1.0 - weight) * (mean2 * mean2 + sigma2 * sigma2);
                let m3 = weight * (mean1 * mean1 * mean1 + 3.0 * mean1 * sigma1 * sigma1)
                    + (1.0 - weight) * (mean2 * mean2 * mean2 + 3.0 * mean2 * sigma2 * sigma2);
                m3 - 3.0 * m * m2 + 2.0 * m * m * m
            }
        }
    }

    /// γ₃ = κ₃ / σ³. For Gamma this is 2/√shape.
    pub fn skewness(&self) -> f64 {
        let var = self.variance();
        self.kappa3() / (var * var.sqrt())
    }

    /// Exact density f(t).
    pub fn density(&self, t: f64) -> f64 {
        match self.family {
            Family::Normal { mean, sigma } => phi((t - mean) / sigma) / sigma,
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => {
                let x = t - shift;
                if x < 0.0 {
                    return 0.0;
                }
                if x == 0.0 {
                    // support boundary: exponential-like laws are finite here,
                    // shape > 1 vanishes, shape < 1 genuinely diverges
                    return match shape.partial_cmp(&1.0).unwrap() {
                        std::cmp::Ordering::Equal => 1.0 / scale,
                        std::cmp::Ordering::Greater => 0.0,
                        std::cmp::Ordering::Less => f64::INFINITY,
                    };
                }
                // log form: direct powers overflow long before shape ~ 500,
                // which batch-mean laws reach routinely
                ((shape - 1.0) * x.ln() - x / scale - ln_gamma(shape) - shape * scale.ln()).exp()
            }
            Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            } => {
                weight * phi((t - mean1) / sigma1) / sigma1
                    + (1.0 - weight) * phi((t - mean2) / sigma2) / sigma2
            }
        }
    }

    /// Exact CDF F(t).
    pub fn cdf(&self, t: f64) -> f64 {
        match self.family {
            Family::Normal { mean, sigma } => big_phi((t - mean) / sigma),
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => {
                let x = t - shift;
                if x <= 0.0 {
                    0.0
                } else {
                    gamma_lr(shape, x / scale)
                }
            }
            Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            } => {
                weight * big_phi((t - mean1) / sigma1)
                    + (1.0 - weight) * big_phi((t - mean2) / sigma2)
            }
        }
    }

    /// Interval outside which the law carries less than ~1e-14 mass; used to
    /// truncate improper integrals.
    pub fn support(&self) -> Interval {
        let (lo, hi) = match self.family {
            Family::Normal { mean, sigma } => (mean - 12.0 * sigma, mean + 12.0 * sigma),
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => {
                // upper tail ~ x^(shape-1) e^(-x/scale): 12 sds past the mean
                // suffices for large shape, the +40·scale floor covers small
                let hi = shift + scale * (shape + 12.0 * shape.sqrt() + 40.0);
                (shift, hi)
            }
            Family::NormalMixture {
                mean1,
                sigma1,
                mean2,
                sigma2,
                ..
            } => (
                (mean1 - 12.0 * sigma1).min(mean2 - 12.0 * sigma2),
                (mean1 + 12.0 * sigma1).max(mean2 + 12.0 * sigma2),
            ),
        };
        Interval::new(lo, hi).expect("finite parameters give a finite support window")
    }

    /// Exact law of the mean of `n_batch` i.i.d. copies. Normal and Gamma are
    /// closed under averaging; the mixture is not (its batch mean is a
    /// 2^n-component mixture), so it is rejected.
    pub fn batch_mean_law(&self, n_batch: u64) -> Result<Self> {
        if n_batch < 1 {
            return Err(Error::InvalidParameter {
                name: "n_batch",
                value: n_batch as f64,
                requirement: "must be >= 1",
            });
        }
        let n = n_batch as f64;
        match self.family {
            Family::Normal { mean, sigma } => Self::normal(mean, sigma / n.sqrt()),
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => Self::shifted_gamma(shape * n, scale / n, shift),
            Family::NormalMixture { .. } => Err(Error::UnsupportedBatchLaw {
                family: "normal-mixture",
            }),
        }
    }

    /// Expansion model for the mean of `n_batch` draws: the batch mean has
    /// mean μ, scale σ/√N, and the *base* law's skewness enters the N^(-1/2)
    /// correction. This is the pathway that makes the N-dependence of the
    /// expansion checkable against exact batch-mean laws.
    pub fn expansion_model(&self, n_batch: u64, convention: Convention) -> Result<EdgeworthModel> {
        if n_batch < 1 {
            return Err(Error::InvalidParameter {
                name: "n_batch",
                value: n_batch as f64,
                requirement: "must be >= 1",
            });
        }
        EdgeworthModel::new(
            self.mean(),
            self.sigma() / (n_batch as f64).sqrt(),
            self.skewness(),
            n_batch,
            convention,
        )
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self.family {
            Family::Normal { mean, sigma } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + sigma * z
            }
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => {
                let g = Gamma::new(shape, scale).expect("validated at construction");
                shift + g.sample(rng)
            }
            Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            } => {
                let u: f64 = rng.random();
                let (m, s) = if u < weight {
                    (mean1, sigma1)
                } else {
                    (mean2, sigma2)
                };
                let d = Normal::new(m, s).expect("validated at construction");
                d.sample(rng)
            }
        }
    }

    fn chunk(&self, n_total: usize, seed: u64, index: usize) -> Vec<f64> {
        let start = index * CHUNK_LEN;
        let len = CHUNK_LEN.min(n_total - start);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        (0..len).map(|_| self.draw(&mut rng)).collect()
    }

    /// `n` i.i.d. draws. Each fixed-size chunk runs on its own RNG stream and
    /// chunks are concatenated in order, so the output is identical whatever
    /// the thread count — and identical to `sample_seq`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<DeltaSample> {
        let n_chunks = n.div_ceil(CHUNK_LEN);
        let chunks = exec::map_indices(n_chunks, |i| self.chunk(n, seed, i));
        DeltaSample::new(chunks.concat(), self.to_string(), Some(seed))
    }

    /// Single-threaded twin of `sample` with identical output; exists so the
    /// benches can price the parallel path against a serial baseline.
    pub fn sample_seq(&self, n: usize, seed: u64) -> Result<DeltaSample> {
        let n_chunks = n.div_ceil(CHUNK_LEN);
        let chunks: Vec<Vec<f64>> = (0..n_chunks).map(|i| self.chunk(n, seed, i)).collect();
        DeltaSample::new(chunks.concat(), self.to_string(), Some(seed))
    }
}

impl fmt::Display for ReferenceDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Normal { mean, sigma } => write!(f, "normal(mean={mean},sigma={sigma})"),
            Family::ShiftedGamma {
                shape,
                scale,
                shift,
            } => write!(f, "shifted-gamma(shape={shape},scale={scale},shift={shift})"),
            Family::NormalMixture {
                weight,
                mean1,
                sigma1,
                mean2,
                sigma2,
            } => write!(
                f,
                "normal-mixture(weight={weight},mean1={mean1},sigma1={sigma1},mean2={mean2},sigma2={sigma2})"
            ),
        }
    }
}
