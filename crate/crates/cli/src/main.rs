mod commands;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use bicircle_core::scalar::{Approx, FieldElement};
use clap::{Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Approx,
}

#[derive(Debug, Parser)]
#[command(name = "bicircle", version, about = "Pythagorean 6-tuples, quaternionic factorization and doubly-circled surfaces")]
struct Cli {
    /// Coefficient arithmetic
    #[arg(long, global = true, value_enum, default_value = "exact")]
    backend: BackendArg,

    /// Tolerance for approximate residuals and circle fits
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,

    /// Sampling resolution, e.g. 64x64
    #[arg(long, global = true, default_value = "64x64", value_parser = parse_res)]
    res: (usize, usize),

    /// Seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Output file (surface: path stem for .obj/.csv/.json)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check X1^2 + ... + X5^2 = X6^2 for a tuple file
    Verify { tuple: PathBuf },
    /// Factor a tuple of degree at most 2 in u and v and write a certificate
    Solve { tuple: PathBuf },
    /// Build the tuple of a factor file {a, b, c, d}
    Make { abcd: PathBuf },
    /// Sample a surface, check its circles and export it
    Surface { params: PathBuf },
    /// Re-verify a certificate against a tuple
    Replay { certificate: PathBuf, tuple: PathBuf },
    /// Seeded smoke test of the whole pipeline
    Selftest,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err("tolerance must be positive".into())
    }
}

fn parse_res(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected NUxNV")?;
    let nu: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let nv: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if nu < 2 || nv < 2 {
        return Err("resolutions must be at least 2".into());
    }
    Ok((nu, nv))
}

macro_rules! with_backend {
    ($backend:expr, $f:ident ( $($arg:expr),* )) => {
        match $backend {
            BackendArg::Exact => commands::$f::<FieldElement>($($arg),*),
            BackendArg::Approx => commands::$f::<Approx>($($arg),*),
        }
    };
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Verify { tuple } => with_backend!(cli.backend, verify(tuple, cli.tol)),
        Command::Solve { tuple } => with_backend!(cli.backend, solve(tuple, out)),
        Command::Make { abcd } => with_backend!(cli.backend, make(abcd, out)),
        Command::Replay { certificate, tuple } => with_backend!(cli.backend, replay(certificate, tuple)),
        Command::Surface { params } => commands::surface(params, cli.res, cli.tol, out),
        Command::Selftest => commands::selftest(cli.seed, cli.res, cli.tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
