//! `toric-syzygy`: weight clouds, `Δ(a)` regions, `τ` estimates, density
//! reports and cube shapes from the command line.
//!
//! Exit codes: 0 on success, 2 for a bad configuration (including points
//! outside Δ), 3 when a block or enumeration limit is hit, 1 otherwise.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "toric-syzygy", version, about = "Torus weights of toric syzygies and cap-centroid regions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Builtin name (segment, square, simplex2, simplex3, cube) or a
    /// polytope file. Required by every command.
    #[arg(long, global = true)]
    pub polytope: Option<String>,
    /// Main output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write an SVG next to `--out` (2D only).
    #[arg(long, global = true)]
    pub svg: bool,
    /// Exact rational ranks instead of ranks modulo a prime.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Prime for modular ranks.
    #[arg(long, global = true, default_value_t = toric_syzygy::koszul::DEFAULT_PRIME)]
    pub prime: u64,
    /// Largest Koszul block (middle-term basis size) attempted.
    #[arg(long, global = true, default_value_t = toric_syzygy::koszul::DEFAULT_BLOCK_LIMIT)]
    pub block_limit: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weight clouds of K_{p,q} for a range of p.
    Syzygy(SyzygyArgs),
    /// Sampled boundary of Δ(a).
    Region(RegionArgs),
    /// τ_x / vol(Δ) by direction sweep and by grid LP.
    Tau(TauArgs),
    /// Covering radius of normalized weights at random points of Δ.
    Density(DensityArgs),
    /// A cube union with prescribed volume and center of mass.
    Shapes(ShapesArgs),
}

#[derive(Args, Debug)]
pub struct SyzygyArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    #[arg(long, default_value_t = 1)]
    pub p_min: usize,
    /// Defaults to r_d.
    #[arg(long)]
    pub p_max: Option<usize>,
    /// Compute ranks both modulo the prime and exactly, and fail on any
    /// disagreement.
    #[arg(long)]
    pub checked: bool,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 720)]
    pub directions: usize,
    #[arg(long, default_value_t = toric_syzygy::cap::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    /// Comma-separated coordinates; integers, fractions and decimals are read
    /// exactly.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value_t = 720)]
    pub directions: usize,
    #[arg(long, default_value_t = toric_syzygy::cap::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    #[arg(long)]
    pub d_max: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Largest p per dilation; all of 1..=r_d when absent.
    #[arg(long)]
    pub p_max: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ShapesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Target volume; read exactly.
    #[arg(long)]
    pub volume: String,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
