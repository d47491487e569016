//! `qsurf`: planar surface codes over biased Pauli channels.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 when an
//! exhaustive job exceeds its decode budget, 1 for anything else (I/O).

mod args;
mod commands;
mod output;
mod plot;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use qsurf_core::Error;
use serde::Serialize;

use crate::commands::{AnalyticArgs, DecodeArgs, DescribeArgs, EnumerateArgs, SimulateArgs, ThresholdArgs};
use crate::reproduce::ReproduceArgs;

#[derive(Parser, Debug)]
#[command(name = "qsurf", version, about = "Planar surface codes, MWPM and ML decoding, logical error rates")]
struct Cli {
    /// Worker threads for enumeration and simulation (all cores when unset).
    #[arg(long, env = "QSURF_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print generators, logical operators and lattice coordinates as JSON.
    Describe(DescribeArgs),
    /// Decode one error (or syndrome) and report the residual logical class.
    Decode(DecodeArgs),
    /// Exhaustively count non-correctable patterns per error class.
    EnumerateBeta(EnumerateArgs),
    /// Evaluate a closed-form logical error rate over a rho grid.
    Analytic(AnalyticArgs),
    /// Code-effective threshold, exact and asymptotic.
    Threshold(ThresholdArgs),
    /// Monte Carlo logical error rate estimates.
    Simulate(SimulateArgs),
    /// Regenerate the table or a figure's data bundle.
    Reproduce(ReproduceArgs),
    /// Write a log-log gnuplot script for a CSV produced by this tool.
    PlotEmit(PlotArgs),
}

#[derive(Args, Debug, Serialize)]
struct PlotArgs {
    /// CSV from `analytic`, `simulate` or `reproduce`.
    #[arg(long)]
    input: PathBuf,
    /// Add the uncoded reference line rho_L = rho.
    #[arg(long)]
    uncoded: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn plot_emit(a: &PlotArgs) -> Result<()> {
    let (script, warnings) = plot::script_for_file(&a.input, a.uncoded)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let mut out = output::open(a.out.as_deref())?;
    out.write_all(script.as_bytes())?;
    out.flush()?;
    Ok(())
}

use std::io::Write as _;

fn run(command: &Command) -> Result<()> {
    match command {
        Command::Describe(a) => commands::describe(a),
        Command::Decode(a) => commands::decode(a),
        Command::EnumerateBeta(a) => commands::enumerate_beta(a),
        Command::Analytic(a) => commands::analytic(a),
        Command::Threshold(a) => commands::threshold(a),
        Command::Simulate(a) => commands::run_simulate(a),
        Command::Reproduce(a) => reproduce::reproduce(a),
        Command::PlotEmit(a) => plot_emit(a),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: the worker count must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
