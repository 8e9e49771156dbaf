use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nnirank2_cli::bench::{self, BenchConfig, Suite};
use nnirank2_cli::commands::{self, CliError, CliResult, EXIT_INPUT, EXIT_OK};
use nnirank2_core::instancegen::{GenKind, GenSpec};

/// Exact nonnegative integer rank-2 factorization.
///
/// Exit status: 0 when the matrix factors at its rank, 1 when it does not
/// have nonnegative integer rank 2, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "nnirank2", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide nonnegative integer rank 2 and print a verified factorization.
    Factor {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Which extreme ray is sent to (1, 0) in the canonical diagram.
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Show the first failing point of every rejected generator pair.
        #[arg(long)]
        explain: bool,
    },
    /// Reduce a rank-2 matrix to an equivalent 3x3 matrix.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write seeded random instances as matrix files.
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        /// Defaults to the number of rows.
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 3.0)]
        sigma: f64,
        #[arg(long, default_value_t = 4)]
        t: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
    },
    /// Run a benchmark suite and emit CSV.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Instances per cell (repetitions per t for the bt suite).
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Comma-separated matrix sizes overriding the suite grid.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Comma-separated sigmas overriding the suite grid.
        #[arg(long, value_delimiter = ',')]
        sigmas: Option<Vec<f64>>,
        #[arg(long, default_value_t = 100)]
        t_max: i64,
    },
    /// Print the planar diagram of a rank-2 matrix.
    Diagram {
        input: PathBuf,
        #[arg(long)]
        canonical: bool,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide by exhaustive search (small instances only).
    Oracle {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> CliResult<i32> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.cmd {
        Cmd::Factor { input, json, r, explain } => commands::factor(&input, json, r, explain, &mut out)?,
        Cmd::Reduce { input, trace, output } => commands::reduce(&input, trace, output.as_deref(), &mut out)?,
        Cmd::Generate { kind, rows, cols, sigma, t, seed, count, outdir } => {
            let kind: GenKind = kind.parse()?;
            let spec = GenSpec { kind, rows, cols: cols.unwrap_or(rows), sigma, t, seed };
            commands::generate(&spec, count, &outdir, &mut out)?;
            EXIT_OK
        }
        Cmd::Bench { suite, seed, out: path, count, sizes, sigmas, t_max } => {
            let suite: Suite = suite.parse()?;
            let cfg = BenchConfig { suite, seed, count, sizes, sigmas, t_max };
            let records = bench::with_thread_cap(|| bench::run_suite(&cfg))??;
            match path {
                Some(p) => bench::write_csv(&records, suite, BufWriter::new(File::create(p)?))?,
                None => bench::write_csv(&records, suite, &mut out)?,
            }
            EXIT_OK
        }
        Cmd::Diagram { input, canonical, r, json } => commands::diagram(&input, canonical, r, json, &mut out)?,
        Cmd::Oracle { input, json } => commands::oracle(&input, json, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let kind = match &e {
                CliError::Usage(_) => "usage",
                _ => "error",
            };
            eprintln!("{kind}: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
