//! Command-line front end: `run`, `sweep`, `static` and `oracle`
//! subcommands over the experiment runner.
//!
//! Exit codes: 0 on success, 2 on config errors, 3 on numeric failures.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::{RunConfig, Scenario};
use crate::error::{Error, Result};
use crate::ledger::Metrics;
use crate::lr;
use crate::runner::{metrics_csv, run, sweep_gamma, trace_csv};

#[derive(Parser)]
#[command(name = "bellhda", about = "CHSH experiment simulator with a delayed-tracking hidden angle")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one run from a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write an α(t)/a(t)/b(t) trace CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Trace decimation: record every Nth grid point.
        #[arg(long, default_value_t = 1)]
        trace_every: usize,
        /// Metrics CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Γ sweep.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated Γ values, e.g. "0.02,0.1,0.3,1.0,2.0".
        #[arg(long)]
        gammas: String,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        /// Worker pool size.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Execute the static four-quarter block scenario.
    Static {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the 16-strategy local-realism enumeration table.
    Oracle,
}

fn load_config(path: &PathBuf) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut config = RunConfig::parse(&text)?;
    config.apply_seed_env()?;
    Ok(config)
}

fn write_metrics(rows: &[Metrics], out: Option<&PathBuf>) -> Result<()> {
    let csv = metrics_csv(rows);
    match out {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn parse_gammas(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("gamma '{s}': {e}")))
        })
        .collect()
}

/// Run the CLI; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, trace, trace_every, out } => {
            let cfg = load_config(&config)?;
            let output = run(&cfg, trace.as_ref().map(|_| trace_every))?;
            if let (Some(path), Some(rows)) = (trace, output.trace.as_ref()) {
                fs::write(path, trace_csv(rows))?;
            }
            write_metrics(&[output.metrics], out.as_ref())
        }
        Command::Sweep { config, gammas, replicates, jobs, out } => {
            let cfg = load_config(&config)?;
            let gammas = parse_gammas(&gammas)?;
            let rows = sweep_gamma(&cfg, &gammas, replicates, jobs)?;
            write_metrics(&rows, Some(&out))
        }
        Command::Static { config, out } => {
            let mut cfg = load_config(&config)?;
            cfg.scenario = Scenario::StaticBlocks;
            let output = run(&cfg, None)?;
            write_metrics(&[output.metrics], out.as_ref())
        }
        Command::Oracle => {
            print!("{}", lr::enumeration_table());
            Ok(())
        }
    }
}
