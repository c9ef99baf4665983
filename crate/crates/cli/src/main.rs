use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steerbound::commands::{
    run_bounds, run_mub, run_multisinglet, run_photonic, BoundsOptions, MultisingletOptions,
    PhotonicOptions,
};
use steerbound::formats::read_basis_file;
use steerbound::grid::parse_grid;
use steerbound::parallel::build_pool;
use steerbound::CliError;
use steerbound_core::models::DEFAULT_N_MAX;
use steerbound_core::steering::{DEFAULT_ENUMERATION_LIMIT, DEFAULT_TOEPLITZ_TOL};

/// Steering-inequality bounds, MUB generation and violation scans.
///
/// Exit codes: 0 success, 2 input error, 3 capacity error, 1 internal error.
#[derive(Parser, Debug)]
#[command(name = "steerbound", version)]
struct Cli {
    /// Worker threads for parallel scans [default: one per core]
    #[arg(long, global = true, env = "STEERBOUND_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Overlap-based LHS bounds for a basis-set JSON file
    Bounds(BoundsArgs),
    /// Write a complete set of mutually unbiased bases for a prime dimension
    Mub(MubArgs),
    /// Violation ratio of k singlet copies, one CSV row per grid point
    Multisinglet(MultisingletArgs),
    /// Optimal settings count for the multi-photon singlet, as CSV
    Photonic(PhotonicArgs),
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Basis-set JSON file
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also enumerate all deterministic strategies for the exact LHS value
    #[arg(long)]
    exact_lhs: bool,
    /// Largest strategy count allowed for --exact-lhs
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    exact_limit: u64,
    /// Tolerance for the block-Toeplitz structure check
    #[arg(long, default_value_t = DEFAULT_TOEPLITZ_TOL)]
    toeplitz_tol: f64,
}

#[derive(Args, Debug)]
struct MubArgs {
    /// Prime dimension
    #[arg(long)]
    dim: usize,
    /// Random unitary perturbation strength in [0, 1]
    #[arg(long)]
    perturb: Option<f64>,
    /// Seed for --perturb
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the basis set here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MultisingletArgs {
    /// Largest number of singlet copies; rows cover k = 1..=k-max
    #[arg(long)]
    k_max: u32,
    /// Detector efficiency, scalar or start:stop:step
    #[arg(long, default_value = "1")]
    eta: String,
    /// Single-pair fidelity
    #[arg(long, default_value_t = 1.0)]
    fidelity: f64,
    /// MUB relaxation, scalar or start:stop:step; the value 1 is skipped
    #[arg(long, default_value = "0")]
    epsilon: String,
    /// Settings exponent
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PhotonicArgs {
    /// Largest photon number per mode; rows cover d = 1..=d-max
    #[arg(long)]
    d_max: usize,
    /// Largest number of settings scanned
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    /// Detector efficiency, scalar or start:stop:step
    #[arg(long, default_value = "1")]
    eta: String,
    /// Also write the ratio for every scanned settings count to this CSV
    #[arg(long, value_name = "PATH")]
    emit_all_n: Option<PathBuf>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds(a) => {
            let b = read_basis_file(&a.input)?;
            let pool = build_pool(cli.workers)?;
            let opts = BoundsOptions {
                exact_lhs: a.exact_lhs,
                exact_limit: a.exact_limit,
                toeplitz_tol: a.toeplitz_tol,
            };
            emit(a.output.as_deref(), &run_bounds(&b, &opts, &pool)?)
        }
        Command::Mub(a) => {
            let out = run_mub(a.dim, a.perturb, a.seed)?;
            let summary = format!("c_max={} epsilon={}", out.c_max, out.epsilon);
            match a.output.as_deref() {
                Some(p) => {
                    emit(Some(p), &out.json)?;
                    println!("{summary}");
                }
                None => {
                    emit(None, &out.json)?;
                    eprintln!("{summary}");
                }
            }
            Ok(())
        }
        Command::Multisinglet(a) => {
            let pool = build_pool(cli.workers)?;
            let opts = MultisingletOptions {
                k_max: a.k_max,
                eta: parse_grid(&a.eta)?,
                fidelity: a.fidelity,
                epsilon: parse_grid(&a.epsilon)?,
                sigma: a.sigma,
            };
            emit(a.output.as_deref(), &run_multisinglet(&opts, &pool)?)
        }
        Command::Photonic(a) => {
            let pool = build_pool(cli.workers)?;
            let opts = PhotonicOptions {
                d_max: a.d_max,
                n_max: a.n_max,
                eta: parse_grid(&a.eta)?,
                emit_all_n: a.emit_all_n.is_some(),
            };
            let out = run_photonic(&opts, &pool)?;
            if let (Some(path), Some(band)) = (a.emit_all_n.as_deref(), out.band_csv.as_deref()) {
                emit(Some(path), band)?;
            }
            emit(a.output.as_deref(), &out.csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("steerbound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
