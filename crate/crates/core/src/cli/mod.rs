//! Command-line front end: configuration, subcommands and the verification suite.

pub mod commands;
pub mod config;
pub mod format;
pub mod goldens;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{execute, ExitCode, Outcome};
pub use config::{Command, ConfigError, OutputFormat, RunConfig, RunMode, BASE_CFG};

#[derive(Debug, Parser)]
#[command(name = "greenchannel", version, about = "Airport-airline channel equilibria under five market structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Configuration file; the bundled base calibration when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `[output] dir`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Seed for the random parameter family; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Comma-separated structures, e.g. `rsc,ltt`.
    #[arg(long, global = true)]
    pub contract: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Cmd {
    /// Equilibrium of each configured structure.
    Solve,
    /// One-parameter sweep, one file per structure and quantity.
    Sweep,
    /// Tax-revenue curves and the revenue-maximising tax.
    Tax,
    /// Two competing airlines.
    Duopoly,
    /// Goldens, cross-validation and proposition checks.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Solve => Command::Solve,
            Cmd::Sweep => Command::Sweep,
            Cmd::Tax => Command::Tax,
            Cmd::Duopoly => Command::Duopoly,
            Cmd::Verify => Command::Verify,
        }
    }
}

/// Loads the configuration, applies flag overrides and runs the command.
pub fn run(cli: &Cli) -> Outcome {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p),
        None => RunConfig::parse(BASE_CFG, "base.cfg"),
    };
    let mut cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            return Outcome { code: ExitCode::Config, files: vec![], messages: vec![format!("config error: {e}")], report: String::new() }
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let format = match cli.format {
        Some(FormatArg::Csv) => OutputFormat::Csv,
        Some(FormatArg::Json) => OutputFormat::Json,
        None => cfg.output.format,
    };
    let dir = cli.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    execute(cli.command.into(), &cfg, cli.contract.as_deref(), &dir, format)
}
