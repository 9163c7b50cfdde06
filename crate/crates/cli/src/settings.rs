//! Resolved run configuration.
//!
//! Precedence, strongest first: command-line flags, the EDGEWORTH_SEED
//! environment variable (seed only), the key=value config file, built-in
//! defaults (seed 42, convention cdf-consistent, tol 1e-10, threads 1).

use std::fs;

use semihard_core::Convention;

use crate::args::Cli;
use crate::error::{CliError, Result};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub convention: Convention,
    pub tol: f64,
    pub threads: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: DEFAULT_SEED,
            convention: Convention::CdfConsistent,
            tol: DEFAULT_TOL,
            threads: 1,
        }
    }
}

impl Settings {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let mut s = Settings::default();
        if let Some(path) = &cli.config {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            s.apply_config(&text)?;
        }
        if let Ok(raw) = std::env::var("EDGEWORTH_SEED") {
            s.seed = raw.parse().map_err(|_| {
                CliError::Usage(format!(
                    "EDGEWORTH_SEED must be an unsigned integer, got {raw:?}"
                ))
            })?;
        }
        if let Some(seed) = cli.seed {
            s.seed = seed;
        }
        if let Some(conv) = cli.convention {
            s.convention = conv.into();
        }
        if let Some(tol) = cli.tol {
            s.tol = tol;
        }
        if let Some(threads) = cli.threads {
            s.threads = threads;
        }
        if !(s.tol.is_finite() && s.tol > 0.0) {
            return Err(CliError::Usage(format!(
                "tol must be finite and > 0, got {}",
                s.tol
            )));
        }
        if s.threads < 1 {
            return Err(CliError::Usage("threads must be >= 1".into()));
        }
        Ok(s)
    }

    fn apply_config(&mut self, text: &str) -> Result<()> {
        for (index, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| {
                CliError::Usage(format!("config line {}: {what}: {line:?}", index + 1))
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => self.seed = value.parse().map_err(|_| bad("invalid seed"))?,
                "tol" => self.tol = value.parse().map_err(|_| bad("invalid tol"))?,
                "threads" => self.threads = value.parse().map_err(|_| bad("invalid threads"))?,
                "convention" => {
                    self.convention = match value {
                        "cdf-consistent" => Convention::CdfConsistent,
                        "density-negated" => Convention::DensityNegated,
                        _ => return Err(bad("invalid convention")),
                    }
                }
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(())
    }

    pub fn convention_name(&self) -> &'static str {
        match self.convention {
            Convention::CdfConsistent => "cdf-consistent",
            Convention::DensityNegated => "density-negated",
        }
    }
}
