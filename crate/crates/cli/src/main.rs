use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use povm_cli::commands::{self, RealizeOptions};
use povm_cli::{CliError, Report};

#[derive(Parser)]
#[command(name = "povm", version, about = "Validate, decompose, realize and sample POVMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check positivity, normalization and outcome points
    Validate { path: PathBuf },
    /// Decide extremality of a finite POVM
    CheckExtremal { path: PathBuf },
    /// Decompose a finite POVM into extremal POVMs and write a certificate
    Decompose {
        path: PathBuf,
        #[arg(long)]
        max_leaves: Option<usize>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Discretize and decompose a continuous family (name or file)
    Realize {
        source: String,
        #[arg(long)]
        nodes: Option<usize>,
        /// Seed of the sphere-random family
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        half_width: Option<f64>,
        /// Dimension of the trivial family
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        max_leaves: Option<usize>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Two-stage sampling from a certificate
    Sample {
        cert: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        shots: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Re-check a certificate and, optionally, samples drawn from it
    Verify {
        cert: PathBuf,
        #[arg(long)]
        samples: Option<PathBuf>,
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Write the fixture corpus into a directory
    Fixtures { dir: PathBuf },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::CheckExtremal { path } => commands::check_extremal(&path),
        Command::Decompose { path, max_leaves, output } => commands::decompose(&path, max_leaves, &output),
        Command::Realize {
            source,
            nodes,
            seed,
            sigma,
            half_width,
            dim,
            max_leaves,
            output,
        } => {
            let opts = RealizeOptions {
                nodes,
                seed,
                sigma,
                half_width,
                dim,
                max_leaves,
            };
            commands::realize(&source, &opts, &output)
        }
        Command::Sample {
            cert,
            state,
            shots,
            seed,
            workers,
            output,
        } => commands::sample(&cert, &state, shots, seed, workers, &output),
        Command::Verify { cert, samples, state } => commands::verify(&cert, samples.as_deref(), state.as_deref()),
        Command::Fixtures { dir } => commands::write_fixtures(&dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
