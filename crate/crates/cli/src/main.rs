//! `cvqft`: synthesise DFT and arbitrary unitaries as linear-optical
//! circuits, verify circuits, and Fourier-transform Gaussian states.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{
    complexity, gaussian, reconstruction_tol, synth, verify, ComplexityArgs, GaussianArgs, InputError,
    SynthArgs, VerifyArgs,
};

#[derive(Debug, Parser)]
#[command(name = "cvqft", version, about = "Continuous-variable quantum Fourier transform toolkit")]
struct Cli {
    /// Tolerance of the command's main check.
    #[arg(long, global = true, value_name = "TOL")]
    tol: Option<f64>,
    /// Print the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Lower synthesised circuits to primitives and drop zero phases.
    #[arg(long, global = true)]
    optimize: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesise a circuit for a DFT or a unitary matrix file.
    Synth(SynthArgs),
    /// Check a circuit against a target unitary.
    Verify(VerifyArgs),
    /// Transform a Gaussian state or derive its matrices.
    Gaussian(GaussianArgs),
    /// Print predicted gate counts without synthesising.
    Complexity(ComplexityArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            eprintln!("error: --tol must be a non-negative number, got {t}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Synth(a) => synth(a, reconstruction_tol(cli.tol), cli.optimize),
        Command::Verify(a) => verify(a, reconstruction_tol(cli.tol)),
        Command::Gaussian(a) => gaussian(a, cli.tol),
        Command::Complexity(a) => complexity(a),
    };
    match result {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            if cli.json {
                match serde_json::to_string_pretty(&report) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                println!("{report}");
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
