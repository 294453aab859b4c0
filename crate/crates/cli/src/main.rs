mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use anyhow::Result;
use betti_core::polycore::FieldSpec;
use clap::{Parser, Subcommand, ValueEnum};

/// Exit code used when `--timeout` expires.
const EXIT_TIMEOUT: u8 = 3;
/// Exit code for usage, parse and computation errors.
const EXIT_ERROR: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "betti", version, about = "Betti tables of projective varieties and bounds on their quadratic strand")]
pub struct Cli {
    /// Coefficient field: `qq` or `fp:P`. Defaults to the ideal file's field, then fp:32003.
    #[arg(long, global = true, env = "BETTI_FIELD")]
    field: Option<FieldSpec>,
    /// Seed for every random choice not fixed in a recipe.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Grid)]
    format: Format,
    /// Wall-clock limit in seconds; exceeding it exits with status 3.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    /// Only compute Gröbner bases and syzygies up to this degree.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Grid,
    Csv,
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an ideal from a recipe such as `S(1,2)` or `M(4,3,1,0)` and write it as an ideal file.
    Construct {
        recipe: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimal free resolution: ranks, twists and numeric invariants.
    Resolve { file: PathBuf },
    /// Betti table of an ideal file.
    Betti {
        file: PathBuf,
        /// Also write the table as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the quadratic strand against the bound for P(k, m) and run the K_{p,1} diagnostic.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: i64,
        /// Defaults to d - e - 1 clamped to [0, e - k].
        #[arg(long)]
        m: Option<i64>,
        /// Treat P(k, m) as known to hold.
        #[arg(long)]
        assert: bool,
        /// Declared condition `k,m` for the generalized K_{p,1} statements; repeatable.
        #[arg(long, value_parser = parse_pair)]
        declare: Vec<(i64, i64)>,
    },
    /// Tabulate the bounds for codimension e.
    Bounds {
        #[arg(long)]
        e: i64,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
    },
    /// Rebuild a reference example and compare it with its stored table.
    Reproduce {
        /// ex-monomial-2e1, ex-canonical-2e2, ex-quartic-extremal, ex-delpezzo-projection or all
        target: String,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected k,m")?;
    Ok((a.trim().parse().map_err(|_| "bad k")?, b.trim().parse().map_err(|_| "bad m")?))
}

/// Text for stdout and the process exit status.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let timeout = cli.timeout;
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(commands::run(&cli));
    });
    let result = match timeout {
        Some(secs) => match rx.recv_timeout(Duration::from_secs(secs)) {
            Ok(r) => r,
            Err(_) => {
                eprintln!("error: timed out after {secs} s");
                return ExitCode::from(EXIT_TIMEOUT);
            }
        },
        None => rx.recv().expect("worker thread finished"),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
