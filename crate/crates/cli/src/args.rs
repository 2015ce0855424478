use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "noncentral",
    version,
    about = "Spectra and Green's functions of the Coulomb plus ring-shaped potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form levels of the general family.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Compare the closed form with the finite-difference solvers.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Euclidean-time resolvent matrix element at a trial energy.
    #[command(allow_negative_numbers = true)]
    Greens(GreensArgs),
    /// Spherical, parabolic and (u, v) coordinates of one point.
    #[command(allow_negative_numbers = true)]
    Transform(TransformArgs),
    /// Hartmann ring-shaped potential (C = 0, B = γ²σ², Z = γσ²).
    #[command(allow_negative_numbers = true)]
    Hartmann(HartmannArgs),
    /// Coulomb field with an Aharonov-Bohm flux line.
    #[command(allow_negative_numbers = true)]
    Ab(AbArgs),
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Spectrum(a) => &a.out,
            Command::Verify(a) => &a.out,
            Command::Greens(a) => &a.out,
            Command::Transform(a) => &a.out,
            Command::Hartmann(a) => &a.out,
            Command::Ab(a) => &a.out,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Flat `key = value` file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UnitArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub e2: f64,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    #[arg(long = "B", default_value_t = 0.0)]
    pub b: f64,
    #[arg(long = "C", default_value_t = 0.0)]
    pub c: f64,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 2)]
    pub n_sum_max: u32,
    #[arg(long, default_value_t = 2)]
    pub nu_max: u32,
    /// A single channel; takes precedence over --nu-max.
    #[arg(long)]
    pub nu: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 2)]
    pub nu_max: u32,
    #[arg(long, default_value_t = 3)]
    pub levels_per_channel: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Coarsest angular grid.
    #[arg(long, default_value_t = 2000)]
    pub angular_nodes: usize,
    /// Coarse radial grid.
    #[arg(long, default_value_t = 6000)]
    pub radial_nodes: usize,
    /// Worker threads (default: NONCENTRAL_NUM_THREADS or all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GreensArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Trial energy in hartree, must be negative.
    #[arg(long)]
    pub energy: f64,
    /// First endpoint `u1,u2,v1,v2`.
    #[arg(long = "a", id = "endpoint_a", value_parser = parse_point4)]
    pub a: [f64; 4],
    /// Second endpoint `u1,u2,v1,v2`.
    #[arg(long = "b", id = "endpoint_b", value_parser = parse_point4)]
    pub b: [f64; 4],
    /// Project onto one angular channel (radii of the endpoints only).
    #[arg(long)]
    pub nu: Option<u32>,
    /// Upper quadrature limit in β (default 200/ω).
    #[arg(long)]
    pub max_beta: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 200_000)]
    pub max_evals: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long)]
    pub v: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HartmannArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub sigma: f64,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AbArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    /// Flux ratio ZeF/(2πħc).
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_point4(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok(out)
}
