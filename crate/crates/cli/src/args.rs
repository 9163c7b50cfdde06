//! Command-line surface: one subcommand per pipeline stage.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semihard_core::distributions::DistanceKind;
use semihard_core::Convention;

#[derive(Parser, Debug)]
#[command(
    name = "semihard",
    version,
    about = "Edgeworth-expansion analysis of the semi-hard triplet loss",
    long_about = "Estimates cumulants from distance-gap samples, evaluates the closed-form \
                  loss expansion, simulates cluster triplets, and validates the expansion \
                  against quadrature of exact batch-mean densities."
)]
pub struct Cli {
    /// Key=value config file (keys: seed, convention, tol, threads)
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// RNG seed (overrides EDGEWORTH_SEED and the config file)
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads for sampling and Monte-Carlo sums (default 1)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Sign convention for the first-order density term
    #[arg(long, global = true, value_enum)]
    pub convention: Option<ConventionArg>,

    /// Absolute tolerance for quadrature oracles
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Estimate cumulants (k-statistics) from a distance-gap sample file
    Fit {
        /// Single-column numeric file; '#' starts a comment line
        input: PathBuf,
    },

    /// Tabulate the loss expansion over an (alpha, batch-size) grid
    Expand(ExpandArgs),

    /// Draw two-cluster triplets and write the distance-gap sample
    Simulate(SimulateArgs),

    /// Compare the expansion against quadrature of exact batch-mean densities
    Validate(ValidateArgs),

    /// Recommend the smallest batch size meeting a relative-error target
    Recommend(RecommendArgs),
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// Mean of the distance gap
    #[arg(long, allow_negative_numbers = true)]
    pub mean: f64,

    /// Standard deviation of the distance gap (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,

    /// Skewness of the distance gap
    #[arg(long, allow_negative_numbers = true)]
    pub skewness: f64,

    /// Margins to tabulate, comma separated, each > 0
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub alphas: Vec<f64>,

    /// Batch sizes to tabulate, comma separated, each >= 1
    #[arg(long, value_delimiter = ',', required = true)]
    pub batch_sizes: Vec<u64>,

    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Embedding dimension
    #[arg(long, default_value_t = 8)]
    pub dimension: usize,

    /// Distance between the two cluster centers (>= 0)
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub separation: f64,

    /// Within-cluster coordinate standard deviation (> 0)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub within_sigma: f64,

    /// Distance function applied to the embeddings
    #[arg(long, value_enum, default_value_t = DistanceArg::Euclidean)]
    pub distance: DistanceArg,

    /// Number of triplets to draw (>= 4)
    #[arg(long)]
    pub n_triplets: usize,

    /// Write the sample here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    /// Margin alpha (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Batch sizes to validate at, comma separated, each >= 1
    #[arg(long, value_delimiter = ',', required = true)]
    pub batch_sizes: Vec<u64>,

    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RecommendArgs {
    /// Margin alpha (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Relative error target (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: f64,

    /// Batch size at which the loss level is evaluated
    #[arg(long)]
    pub n_eff: u64,

    /// Mean of the distance gap (direct model; conflicts with --family)
    #[arg(long, conflicts_with = "family", allow_negative_numbers = true)]
    pub mean: Option<f64>,

    /// Standard deviation of the distance gap (direct model)
    #[arg(long, conflicts_with = "family", allow_negative_numbers = true)]
    pub sigma: Option<f64>,

    /// Skewness of the distance gap (direct model)
    #[arg(long, conflicts_with = "family", allow_negative_numbers = true)]
    pub skewness: Option<f64>,

    #[command(flatten)]
    pub family: FamilyArgs,

    /// Remainder constant from a prior validate run's scaling fit;
    /// omit with --family to fit it inline
    #[arg(long, allow_negative_numbers = true)]
    pub c_estimate: Option<f64>,

    /// Batch sizes for the inline scaling fit
    #[arg(long, value_delimiter = ',', default_values_t = vec![4u64, 8, 16, 32, 64, 128])]
    pub batch_sizes: Vec<u64>,
}

/// Reference-distribution selection shared by validate and recommend.
#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Reference family with a known batch-mean law
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,

    /// normal: mean of the law
    #[arg(
        long = "family-mean",
        value_name = "MEAN",
        allow_negative_numbers = true
    )]
    pub family_mean: Option<f64>,

    /// normal: standard deviation of the law (> 0)
    #[arg(
        long = "family-sigma",
        value_name = "SIGMA",
        allow_negative_numbers = true
    )]
    pub family_sigma: Option<f64>,

    /// gamma: shape parameter (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub shape: Option<f64>,

    /// gamma: scale parameter (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub scale: Option<f64>,

    /// gamma: location shift
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub shift: f64,

    /// mixture: weight of the first component, in (0, 1)
    #[arg(long, allow_negative_numbers = true)]
    pub weight: Option<f64>,

    /// mixture: mean of the first component
    #[arg(long, allow_negative_numbers = true)]
    pub mean1: Option<f64>,

    /// mixture: standard deviation of the first component (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub sigma1: Option<f64>,

    /// mixture: mean of the second component
    #[arg(long, allow_negative_numbers = true)]
    pub mean2: Option<f64>,

    /// mixture: standard deviation of the second component (> 0)
    #[arg(long, allow_negative_numbers = true)]
    pub sigma2: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Normal,
    Gamma,
    Mixture,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionArg {
    /// Density is the derivative of the expanded CDF (+He3 term)
    CdfConsistent,
    /// Printed first-order form with the He3 term negated
    DensityNegated,
}

impl From<ConventionArg> for Convention {
    fn from(arg: ConventionArg) -> Self {
        match arg {
            ConventionArg::CdfConsistent => Convention::CdfConsistent,
            ConventionArg::DensityNegated => Convention::DensityNegated,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceArg {
    Euclidean,
    SquaredEuclidean,
}

impl From<DistanceArg> for DistanceKind {
    fn from(arg: DistanceArg) -> Self {
        match arg {
            DistanceArg::Euclidean => DistanceKind::Euclidean,
            DistanceArg::SquaredEuclidean => DistanceKind::SquaredEuclidean,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}
