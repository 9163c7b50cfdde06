//! `simulate`: draw two-cluster triplets and write the distance-gap sample.

use semihard_core::distributions::{simulate_triplets, ClusterTripletConfig};
use semihard_core::DeltaSample;

use crate::args::SimulateArgs;
use crate::commands::write_output;
use crate::error::{CliError, Result};
use crate::sample_io::render_delta_sample;
use crate::settings::Settings;

pub fn run(settings: &Settings, args: &SimulateArgs) -> Result<()> {
    let sample = build_sample(settings, args)?;
    write_output(args.output.as_ref(), &render_delta_sample(&sample))
}

pub fn build_sample(settings: &Settings, args: &SimulateArgs) -> Result<DeltaSample> {
    if args.n_triplets < DeltaSample::MIN_LEN {
        return Err(CliError::Usage(format!(
            "--n-triplets must be >= {} so cumulants stay estimable, got {}",
            DeltaSample::MIN_LEN,
            args.n_triplets
        )));
    }
    if args.dimension < 1 {
        return Err(CliError::Usage(format!(
            "--dimension must be >= 1, got {}",
            args.dimension
        )));
    }
    if !(args.separation.is_finite() && args.separation >= 0.0) {
        return Err(CliError::Usage(format!(
            "--separation must be finite and >= 0, got {}",
            args.separation
        )));
    }
    if !(args.within_sigma.is_finite() && args.within_sigma > 0.0) {
        return Err(CliError::Usage(format!(
            "--within-sigma must be finite and > 0, got {}",
            args.within_sigma
        )));
    }
    let config = ClusterTripletConfig::new(
        args.dimension,
        args.separation,
        args.within_sigma,
        args.distance.into(),
        args.n_triplets,
        settings.seed,
    )
    .map_err(|err| CliError::Usage(err.to_string()))?;
    Ok(simulate_triplets(&config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::DistanceArg;

    fn base_args() -> SimulateArgs {
        SimulateArgs {
            dimension: 8,
            separation: 2.0,
            within_sigma: 1.0,
            distance: DistanceArg::Euclidean,
            n_triplets: 64,
            output: None,
        }
    }

    #[test]
    fn same_seed_same_sample_different_seed_differs() {
        let args = base_args();
        let mut settings = Settings::default();
        let a = build_sample(&settings, &args).unwrap();
        let b = build_sample(&settings, &args).unwrap();
        assert_eq!(a.values(), b.values());
        settings.seed = 43;
        let c = build_sample(&settings, &args).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn tiny_or_degenerate_requests_are_usage_errors() {
        let settings = Settings::default();
        let mut args = base_args();
        args.n_triplets = 0;
        assert!(matches!(
            build_sample(&settings, &args),
            Err(CliError::Usage(_))
        ));

        let mut args = base_args();
        args.dimension = 0;
        assert!(matches!(
            build_sample(&settings, &args),
            Err(CliError::Usage(_))
        ));

        let mut args = base_args();
        args.within_sigma = 0.0;
        assert!(matches!(
            build_sample(&settings, &args),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn sample_records_provenance() {
        let sample = build_sample(&Settings::default(), &base_args()).unwrap();
        assert_eq!(sample.seed(), Some(42));
        assert!(sample.source_tag().starts_with("triplets("));
        assert_eq!(sample.len(), 64);
    }
}
