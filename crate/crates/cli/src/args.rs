use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gldepth::scenarios::DEFAULT_BASE_SEED;
use gldepth::DistanceKind;

#[derive(Debug, Parser)]
#[command(name = "gldepth", version, about = "Global and local depths for directional data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a sample and write it as unit-vector CSV.
    Simulate(SimulateArgs),
    /// Per-point global and local depths as CSV.
    Depth(DepthArgs),
    /// GLD-plot as SVG plus a JSON summary.
    Gldplot(GldplotArgs),
    /// Depth curve of a circular sample on an angle grid.
    Curve(CurveArgs),
    /// Regenerate every simulated scenario into a directory.
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Vmf,
    Mixture,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Unit,
    Latlon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    Arc,
    Cosine,
    Chord,
}

impl From<Dist> for DistanceKind {
    fn from(d: Dist) -> Self {
        match d {
            Dist::Arc => DistanceKind::Arc,
            Dist::Cosine => DistanceKind::Cosine,
            Dist::Chord => DistanceKind::Chord,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    /// Generative model.
    #[arg(long = "gen", value_enum)]
    pub generator: Option<Generator>,
    /// Ambient dimension.
    #[arg(long)]
    pub q: Option<usize>,
    /// Concentration of the vMF model.
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    /// Mean direction: comma-separated coordinates, or one angle in degrees when q = 2.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Mixture component WEIGHT:KAPPA:MU, repeatable.
    #[arg(long = "component", value_name = "W:KAPPA:MU", allow_hyphen_values = true)]
    pub components: Vec<String>,
    /// Sample size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BASE_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input CSV file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "unit")]
    pub format: Format,
    #[command(flatten)]
    pub generator: GeneratorArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DepthOptions {
    #[arg(long = "dist", value_enum, default_value = "cosine")]
    pub dist: Dist,
    /// Locality radius in units of the chosen distance.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Locality radius as a cap angle in degrees.
    #[arg(long = "cap-angle", allow_negative_numbers = true)]
    pub cap_angle: Option<f64>,
    /// Exclude each sample point from its own reference sample.
    #[arg(long = "leave-one-out")]
    pub leave_one_out: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct DepthArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub depth: DepthOptions,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GldplotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub depth: DepthOptions,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Draw the 45-degree reference line.
    #[arg(long)]
    pub diagonal: bool,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub depth: DepthOptions,
    /// Number of grid angles.
    #[arg(long, default_value_t = 360)]
    pub grid: usize,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ReproArgs {
    #[arg(long = "out-dir", value_name = "DIR")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BASE_SEED)]
    pub seed: u64,
}
