//! Reading and writing delta-sample files.
//!
//! The on-disk format is one value per line; blank lines and `#` comments are
//! ignored. `write_delta_file` records the sample's provenance (source tag and
//! seed) as comments so a round trip through disk keeps enough context to
//! reproduce the run.

use std::path::Path;

use semihard_core::DeltaSample;

use crate::error::{CliError, Result};

pub fn read_delta_file(path: &Path) -> Result<DeltaSample> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
    let mut values = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| {
            CliError::Data(format!(
                "{}:{}: not a number: {line:?}",
                path.display(),
                index + 1
            ))
        })?;
        values.push(value);
    }
    let sample = DeltaSample::new(values, format!("file:{}", path.display()), None)?;
    Ok(sample)
}

pub fn render_delta_sample(sample: &DeltaSample) -> String {
    let mut out = String::new();
    out.push_str(&format!("# source: {}\n", sample.source_tag()));
    if let Some(seed) = sample.seed() {
        out.push_str(&format!("# seed: {seed}\n"));
    }
    for value in sample.values() {
        out.push_str(&format!("{value}\n"));
    }
    out
}
