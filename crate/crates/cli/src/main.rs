//! `icic` — experiment harness for the multicell ICIC laboratory.
//!
//! Subcommands reproduce the standard experiments as plot-ready CSV:
//! analytic-vs-simulation sweeps, strategy-region maps, 3-cell system
//! comparisons, CSI-cost curves, and limited-feedback designs, plus a
//! `validate` suite that cross-checks every computational route.

mod config;
mod csvout;
mod experiments;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use config::{parse_p0_list, ExperimentConfig};
use csvout::CsvTable;

#[derive(Parser)]
#[command(name = "icic", version, about = "Multicell intercell-interference-cancellation laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic vs Monte Carlo sum rate per strategy pair (2-cell axis sweep)
    Simvcalc(CommonArgs),
    /// Selected strategy pair per (user1, user2) axis position (2-cell grid)
    Regions(CommonArgs),
    /// No-ICIC vs static vs adaptive ICIC over random 3-cell drops
    Compare3(CommonArgs),
    /// CSI directions required by each system over random 3-cell drops
    Csicost(CommonArgs),
    /// Limited-feedback modes: B* scaling, fixed home bits, bit allocation
    Feedback(CommonArgs),
    /// Run the oracle and distribution validation suites
    Validate(ValidateArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Plain-text key=value config file (flags override it)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge SNR(s) in dB, comma separated
    #[arg(long, allow_hyphen_values = true)]
    p0_db: Option<String>,
    /// Transmit antennas per BS
    #[arg(long)]
    nt: Option<u32>,
    /// Path loss exponent
    #[arg(long)]
    alpha: Option<f64>,
    /// Monte Carlo trials per estimate
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed (all randomness derives from it)
    #[arg(long)]
    seed: Option<u64>,
    /// Random drops per sweep point
    #[arg(long)]
    placements: Option<u64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixed user-1 axis position as a fraction of R (2-cell sweeps)
    #[arg(long, allow_hyphen_values = true)]
    x1: Option<f64>,
    /// Axis grid step as a fraction of R
    #[arg(long)]
    step: Option<f64>,
    /// Inner-area disk radius as a fraction of R (3-cell drops)
    #[arg(long)]
    radius_frac: Option<f64>,
    /// Keep-out radius around BSs as a fraction of R (3-cell drops)
    #[arg(long)]
    min_bs_frac: Option<f64>,
    /// Also write a gnuplot script next to the CSV
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Smaller sample sizes for a fast smoke run
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    seed: Option<u64>,
}

impl CommonArgs {
    fn build(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        if let Some(s) = &self.p0_db {
            cfg.p0_db = parse_p0_list(s)?;
        }
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { cfg.$field = v; })*
            };
        }
        take!(nt, alpha, trials, seed, placements, x1, step, radius_frac, min_bs_frac);
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        cfg.gnuplot |= self.gnuplot;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(table: CsvTable, cfg: &ExperimentConfig, command: &str) -> Result<()> {
    let hash = cfg.hash(command);
    let written = table.write(cfg.out.as_deref(), hash, &cfg.canonical_string(command))?;
    if let Some(path) = written {
        eprintln!("wrote {} ({} rows)", path.display(), table.rows.len());
        if cfg.gnuplot {
            let gp = table.write_gnuplot(&path)?;
            eprintln!("wrote {}", gp.display());
        }
    } else if cfg.gnuplot {
        eprintln!("note: --gnuplot needs --out; skipped");
    }
    Ok(())
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Simvcalc(args) => {
            let cfg = args.build()?;
            emit(experiments::simvcalc::run(&cfg)?, &cfg, "simvcalc")?;
        }
        Command::Regions(args) => {
            let cfg = args.build()?;
            emit(experiments::regions::run(&cfg)?, &cfg, "regions")?;
        }
        Command::Compare3(args) => {
            let cfg = args.build()?;
            emit(experiments::compare3::run(&cfg)?, &cfg, "compare3")?;
        }
        Command::Csicost(args) => {
            let cfg = args.build()?;
            emit(experiments::csicost::run(&cfg)?, &cfg, "csicost")?;
        }
        Command::Feedback(args) => {
            let cfg = args.build()?;
            emit(experiments::feedback::run(&cfg)?, &cfg, "feedback")?;
        }
        Command::Validate(args) => {
            let opts = experiments::validate::ValidateOptions {
                quick: args.quick,
                seed: args.seed.unwrap_or(1),
            };
            return experiments::validate::run(&opts);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
