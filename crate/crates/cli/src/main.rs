//! `qsearch` — reproduce the search-algorithm performance tables and figure
//! data, run seeded sampled searches, and benchmark the hybrid engine.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 experiment-spec error
//! (bad marked set, bad configuration, register over the width limit),
//! 3 internal invariant violation.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use qsearch_cli::hybrid_bench::run_hybrid;
use qsearch_cli::predict::{run_predict, Model};
use qsearch_cli::simulate::{run_simulate, Algorithm};
use qsearch_cli::sweep::{sweep_csv, Figure};
use qsearch_cli::table::{render, table1_rows, Table1Method};

#[derive(Parser)]
#[command(
    name = "qsearch",
    version,
    about = "Statevector experiments for multi-match quantum search",
    long_about = "Reproduces the single-iteration performance table and the figure sweeps, \
                  runs seeded sampled searches for the one-shot, iterated, and Grover \
                  circuits, and benchmarks the hybrid dispatcher.\n\n\
                  The register width limit defaults to 24 qubits; set QSEARCH_MAX_QUBITS \
                  to override it."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-size max/min/average success of the one-shot circuit
    Table1 {
        /// Largest register width n to tabulate (rows cover n = 2..=n-max)
        #[arg(long = "n-max")]
        n_max: u32,
        /// Compute the rows by full statevector simulation instead of the
        /// closed form
        #[arg(long)]
        simulate: bool,
    },
    /// Write figure data (success probability vs match ratio) as CSV
    Sweep {
        /// Which figure's curves to emit: 5, 7, or 8
        #[arg(long, value_parser = parse_figure)]
        figure: u8,
        /// Number of ratio samples on (0, 1]
        #[arg(long)]
        points: usize,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample a prepared search circuit over many seeded shots
    Simulate {
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        /// Search-register width in qubits
        #[arg(long)]
        n: u32,
        /// Marked-set spec: list:…, range:a-b, first:M, count:M:seed:S, file:path
        #[arg(long)]
        marked: String,
        /// Iteration depth (younes-iter and grover only)
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// Master seed; shot k uses stream (seed, k)
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        shots: u64,
        /// Also write the JSON report to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Benchmark the hybrid engine over many seeded searches
    Hybrid {
        /// Search-register width in qubits
        #[arg(long)]
        n: u32,
        /// Marked-set spec (the simulated ground truth)
        #[arg(long)]
        marked: String,
        /// Tell the dispatcher the true match count in advance
        #[arg(long = "known-m")]
        known_m: bool,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        shots: u64,
    },
    /// Evaluate a closed-form prediction without running circuits
    Predict {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Search-register width in qubits
        #[arg(long)]
        n: u32,
        /// Match count (required by all models except average)
        #[arg(long)]
        m: Option<usize>,
        /// Iteration depth (younes-iter and grover; default 1)
        #[arg(long)]
        q: Option<u32>,
    },
}

fn parse_figure(text: &str) -> Result<u8, String> {
    match text {
        "5" => Ok(5),
        "7" => Ok(7),
        "8" => Ok(8),
        other => Err(format!(
            "no sweep is defined for figure {other}; choose 5, 7, or 8"
        )),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Younes,
    YounesIter,
    Grover,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(arg: AlgorithmArg) -> Self {
        match arg {
            AlgorithmArg::Younes => Algorithm::Younes,
            AlgorithmArg::YounesIter => Algorithm::YounesIter,
            AlgorithmArg::Grover => Algorithm::Grover,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Younes,
    YounesIter,
    Grover,
    Classical,
    Average,
}

impl From<ModelArg> for Model {
    fn from(arg: ModelArg) -> Self {
        match arg {
            ModelArg::Younes => Model::Younes,
            ModelArg::YounesIter => Model::YounesIter,
            ModelArg::Grover => Model::Grover,
            ModelArg::Classical => Model::Classical,
            ModelArg::Average => Model::Average,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr by itself.
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &qsearch_core::Error) -> u8 {
    use qsearch_core::Error;
    match err {
        Error::Io(_) => 1,
        Error::InvariantViolation(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> qsearch_core::Result<()> {
    match cli.command {
        Command::Table1 { n_max, simulate } => {
            let method = if simulate {
                Table1Method::Simulated
            } else {
                Table1Method::ClosedForm
            };
            let rows = table1_rows(n_max, method)?;
            print!("{}", render(&rows));
        }
        Command::Sweep {
            figure,
            points,
            out,
        } => {
            let csv = sweep_csv(Figure::from_number(figure)?, points)?;
            std::fs::write(&out, csv)?;
        }
        Command::Simulate {
            algorithm,
            n,
            marked,
            q,
            seed,
            shots,
            json,
        } => {
            let report = run_simulate(algorithm.into(), n, &marked, q, seed, shots)?;
            let line = report.to_string();
            if let Some(path) = json {
                std::fs::write(&path, format!("{line}\n"))?;
            }
            println!("{line}");
        }
        Command::Hybrid {
            n,
            marked,
            known_m,
            seed,
            shots,
        } => {
            let report = run_hybrid(n, &marked, known_m, seed, shots)?;
            println!("{report}");
        }
        Command::Predict { model, n, m, q } => {
            let report = run_predict(model.into(), n, m, q)?;
            println!("{report}");
        }
    }
    Ok(())
}
