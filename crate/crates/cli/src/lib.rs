//! Command-line front end for the semi-hard loss expansion library.
//!
//! `run` resolves settings (flags > EDGEWORTH_SEED > config file > defaults),
//! pins the worker-thread pool, and dispatches to one subcommand. All output
//! formatting lives here; every numeric statement comes from `semihard-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod sample_io;
pub mod settings;

use args::{Cli, Command};
use error::Result;
use settings::Settings;

pub fn run(cli: &Cli) -> Result<()> {
    let settings = Settings::resolve(cli)?;
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(settings.threads)
            .build()
            .map_err(|err| error::CliError::Usage(format!("cannot build thread pool: {err}")))?;
        pool.install(|| dispatch(cli, &settings))
    }
    #[cfg(not(feature = "parallel"))]
    {
        if settings.threads > 1 {
            eprintln!("note: built without the parallel feature; running on one thread");
        }
        dispatch(cli, &settings)
    }
}

fn dispatch(cli: &Cli, settings: &Settings) -> Result<()> {
    match &cli.command {
        Command::Fit { input } => commands::fit::run(input),
        Command::Expand(args) => commands::expand::run(settings, args),
        Command::Simulate(args) => commands::simulate::run(settings, args),
        Command::Validate(args) => commands::validate::run(settings, args),
        Command::Recommend(args) => commands::recommend::run(settings, args),
    }
}
