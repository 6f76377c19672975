//! Command-line front end for the reflector shaping and reception
//! pipeline.

mod commands;
mod config;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "reflector-sim",
    version,
    about = "Adjusts a cable-net spherical reflector into a working paraboloid and \
             evaluates how many panels deliver the reflected signal into the \
             receiver cabin"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the ideal paraboloid and write parabola.json.
    Fit(CommonArgs),
    /// Generate a synthetic cap mesh and write nodes.csv / panels.csv.
    GenMesh(CommonArgs),
    /// Solve the actuator adjustment and write result.csv / solution.json.
    Adjust(CommonArgs),
    /// Evaluate reception for the sphere and the working surface, writing
    /// reception_*.json, comparison.json and plot-data CSVs.
    Evaluate(CommonArgs),
    /// Compare two previously written reception reports.
    Compare {
        /// Baseline report (reception_sphere.json).
        #[arg(long, value_name = "PATH")]
        sphere: PathBuf,
        /// Adjusted-surface report (reception_working.json).
        #[arg(long, value_name = "PATH")]
        working: PathBuf,
        /// Write comparison.json here in addition to printing.
        #[arg(long = "out-dir", value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
}

/// Worker-pool cap from the environment: 0 or unset means one worker per
/// core.
fn init_threads_from_env() -> Result<()> {
    match std::env::var("REFLECTOR_SIM_THREADS") {
        Ok(raw) => {
            let threads: usize = raw
                .trim()
                .parse()
                .with_context(|| format!("REFLECTOR_SIM_THREADS: invalid value `{raw}`"))?;
            if let Err(e) = reflector_core::exec::init_threads(threads) {
                eprintln!("warning: worker pool already initialized: {e}");
            }
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(e).context("REFLECTOR_SIM_THREADS: not valid unicode"),
    }
}

fn main() -> Result<()> {
    init_threads_from_env()?;
    let cli = Cli::parse();
    match &cli.command {
        Command::Fit(args) => commands::cmd_fit(&RunConfig::resolve(args)?),
        Command::GenMesh(args) => commands::cmd_gen_mesh(&RunConfig::resolve(args)?),
        Command::Adjust(args) => commands::cmd_adjust(&RunConfig::resolve(args)?),
        Command::Evaluate(args) => commands::cmd_evaluate(&RunConfig::resolve(args)?),
        Command::Compare {
            sphere,
            working,
            out_dir,
        } => commands::cmd_compare(sphere, working, out_dir.as_ref()),
    }
}
