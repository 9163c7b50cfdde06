//! `fit`: estimate cumulants from a distance-gap sample file.

use std::path::Path;

use semihard_core::estimate_cumulants;

use crate::error::Result;
use crate::sample_io::read_delta_file;

pub fn run(input: &Path) -> Result<()> {
    let sample = read_delta_file(input)?;
    let summary = estimate_cumulants(&sample)?;
    print!("{}", render(sample.source_tag(), &summary));
    Ok(())
}

fn render(source: &str, summary: &semihard_core::CumulantSummary) -> String {
    format!(
        "source={source}\n\
         n_samples={}\n\
         mean={}\n\
         variance={}\n\
         sigma={}\n\
         kappa3={}\n\
         skewness={}\n",
        summary.n_samples(),
        summary.mean(),
        summary.variance(),
        summary.sigma(),
        summary.kappa3(),
        summary.skewness(),
    )
}
