//! Command-line front end for the `cvqkd` key-rate library.
//!
//! ```text
//! cvqkd rate     --config link.toml
//! cvqkd sweep    --config sweep.toml --out rates.csv --jobs 4
//! cvqkd optimize --config link.toml --trust trusted_receiver --detection het
//! ```

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use cvqkd::params::{Detection, Trust};

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use config::{Config, Overrides, Scenario};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "cvqkd", version, about = "Asymptotic CV-QKD key rates under trusted-device assumptions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one operating point and print a JSON report.
    Rate(Args),
    /// Sweep one parameter and write CSV.
    Sweep(Args),
    /// Optimize the modulation variance, optionally with a detuned receiver.
    Optimize(Args),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// TOML configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// untrusted_all, trusted_receiver or trusted_receiver_and_preparation.
    #[arg(long, value_parser = parse_trust)]
    pub trust: Option<Trust>,
    /// hom or het.
    #[arg(long, value_parser = parse_detection)]
    pub detection: Option<Detection>,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

fn parse_trust(s: &str) -> Result<Trust, String> {
    Trust::ALL
        .into_iter()
        .find(|t| t.as_str() == s)
        .ok_or_else(|| format!("unknown trust case `{s}`"))
}

fn parse_detection(s: &str) -> Result<Detection, String> {
    match s {
        "hom" | "homodyne" => Ok(Detection::Homodyne),
        "het" | "heterodyne" => Ok(Detection::Heterodyne),
        _ => Err(format!("unknown detection `{s}`, expected hom or het")),
    }
}

impl Args {
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        Config::load(&self.config)?.resolve(Overrides {
            trust: self.trust,
            detection: self.detection,
        })
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Io(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Rate(args) => {
            let report = commands::rate(&args.scenario()?)?;
            output::write_json(open_out(args.out.as_deref())?, &report)
        }
        Command::Sweep(args) => {
            let rows = commands::sweep(&args.scenario()?, args.jobs)?;
            output::write_csv(open_out(args.out.as_deref())?, &rows)
        }
        Command::Optimize(args) => {
            let report = commands::optimize(&args.scenario()?)?;
            output::write_json(open_out(args.out.as_deref())?, &report)
        }
    }
}
