//! `ifn` — membership-norm and derivative checks from the command line.
//!
//! Exit status: 0 when the check passes, 1 when it fails, 2 on usage,
//! configuration or i/o errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod config;
mod runner;

use config::{CheckKind, FlagOverrides};
use ifn_core::limits::Verdict;
use runner::RunError;

#[derive(Parser)]
#[command(
    name = "ifn",
    version,
    about = "Certificate-style checks for membership-graded norms and derivatives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CheckArgs {
    /// Configuration file of `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the seed
    #[arg(long)]
    seed: Option<u64>,
    /// Report output path (default ifn-report.json)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the acceptance level
    #[arg(long)]
    alpha: Option<f64>,
    /// Override the grid, e.g. --t-grid 0.1,1,10
    #[arg(long = "t-grid")]
    t_grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the sixteen membership-norm laws on a sampled space
    Axioms(CheckArgs),
    /// Check t-norm and t-conorm operation laws
    Tnorm(CheckArgs),
    /// Certify convergence of a registry sequence
    Convergence(CheckArgs),
    /// Certify pointwise continuity of a registry function
    Continuity(CheckArgs),
    /// Verify (or estimate) a scalar derivative
    Derivative(CheckArgs),
    /// Verify a directional derivative candidate
    Gateaux(CheckArgs),
    /// Verify a uniform derivative candidate
    Frechet(CheckArgs),
    /// Run the theorem battery
    Theorems(CheckArgs),
    /// List the function registry
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::List => {
            for line in runner::registry_lines() {
                println!("{line}");
            }
            return ExitCode::SUCCESS;
        }
        Command::Axioms(a) => (CheckKind::Axioms, a),
        Command::Tnorm(a) => (CheckKind::Tnorm, a),
        Command::Convergence(a) => (CheckKind::Convergence, a),
        Command::Continuity(a) => (CheckKind::Continuity, a),
        Command::Derivative(a) => (CheckKind::Derivative, a),
        Command::Gateaux(a) => (CheckKind::Gateaux, a),
        Command::Frechet(a) => (CheckKind::Frechet, a),
        Command::Theorems(a) => (CheckKind::Theorems, a),
    };
    match run_check(kind, args) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run_check(kind: CheckKind, args: CheckArgs) -> Result<Verdict, RunError> {
    let mut run_config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            config::parse_config(&text, Some(kind))?
        }
        None => config::default_config(kind),
    };
    let flags = FlagOverrides {
        seed: args.seed,
        alpha: args.alpha,
        t_grid: args
            .t_grid
            .as_deref()
            .map(config::parse_grid_flag)
            .transpose()?,
        out: args.out,
    };
    config::apply_flags(&mut run_config, &flags)?;
    let outcome = runner::execute(&run_config)?;
    for line in &outcome.summary {
        println!("{line}");
    }
    println!("report written to {}", outcome.report_path.display());
    Ok(outcome.verdict)
}
