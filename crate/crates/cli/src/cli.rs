//! Command-line arguments and their translation into core types.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use geoaffine_core::affine::AffineProbe;
use geoaffine_core::{SpaceKind, SpaceSpec};

#[derive(Debug, Parser)]
#[command(
    name = "geoaffine",
    version,
    about = "Linear-affine functions and sub-level convexity on constant-curvature model spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce the four failing assertions for x0 = (0,1), u0 = (0,1) on the half-plane.
    VerifyCounterexample(VerifyArgs),
    /// Search one sub-level set for a chord that leaves it.
    Scan(ScanArgs),
    /// Scan a grid of levels with the same budget.
    Sweep(SweepArgs),
    /// Seeded random-triangle comparison suites.
    Triangles(TriangleArgs),
    /// Grid samples of f0 with the level contour, axis geodesic and witness chord.
    PlotLevelset(PlotArgs),
    /// Parallel transport of one tangent vector along the minimal geodesic.
    Transport(TransportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Euclidean,
    Sphere,
    Hyperbolic,
    Halfplane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Model space.
    #[arg(long, value_enum, default_value = "halfplane")]
    pub space: SpaceArg,
    /// Sectional curvature (defaults: sphere 1, hyperbolic -1; fixed for the others).
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    /// Intrinsic dimension (the half-plane is always 2).
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    /// Base point x0, comma separated (sphere input is rescaled; hyperboloid input may omit the time coordinate).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x0: Option<Vec<f64>>,
    /// Direction u0 at x0, comma separated (projected onto the tangent space).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub u0: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Tolerance for the finite-difference checks (gradient, covariant derivative, curl).
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Number of random point pairs.
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    /// Interior chord parameters per pair.
    #[arg(long, default_value_t = 64)]
    pub steps: usize,
    /// RNG seed.
    #[arg(long, default_value_t = geoaffine_core::tol::DEFAULT_SEED)]
    pub seed: u64,
    /// Radius of the sampling ball at x0 (exp-chart); space default when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Inject the explicit non-convexity construction when it applies.
    #[arg(long)]
    pub inject_construction: bool,
    /// Inject the pair (1/2, 1/2), (-1/2, 1/2) (half-plane only).
    #[arg(long)]
    pub inject_paper_points: bool,
    /// Check the tangent-decomposition bound at every scanned chord point.
    #[arg(long)]
    pub certificate: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Level c of the sub-level set.
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Levels, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub c_grid: Vec<f64>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TriangleArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Number of random triangles.
    #[arg(long, default_value_t = 1000)]
    pub triangles: usize,
    /// RNG seed.
    #[arg(long, default_value_t = geoaffine_core::tol::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Level c of the drawn contour.
    #[arg(long, default_value_t = -0.4, allow_negative_numbers = true)]
    pub c: f64,
    /// Chart window xmin,xmax,ymin,ymax (half-plane default -1.5,1.5,0,2; stereographic default -1.5,1.5,-1.5,1.5).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub window: Option<Vec<f64>>,
    /// Grid cells per axis.
    #[arg(long, default_value_t = 120)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TransportArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Target point, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub to: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl SpaceArgs {
    pub fn spec(&self) -> anyhow::Result<SpaceSpec> {
        let spec = match self.space {
            SpaceArg::Euclidean => {
                if self.kappa.is_some_and(|k| k != 0.0) {
                    bail!("euclidean space has kappa = 0");
                }
                SpaceSpec::euclidean(self.dim)?
            }
            SpaceArg::Sphere => SpaceSpec::sphere(self.dim, self.kappa.unwrap_or(1.0))?,
            SpaceArg::Hyperbolic => SpaceSpec::hyperbolic(self.dim, self.kappa.unwrap_or(-1.0))?,
            SpaceArg::Halfplane => {
                if self.kappa.is_some_and(|k| k != -1.0) || self.dim != 2 {
                    bail!("the half-plane is 2-dimensional with kappa = -1");
                }
                SpaceSpec::half_plane()
            }
        };
        Ok(spec)
    }
}

impl ProbeArgs {
    /// The probe on `space`; defaults to x0 = (0,1), u0 = (0,1) on the half-plane and
    /// to the canonical origin with the first frame vector elsewhere.
    pub fn probe(&self, space: SpaceSpec) -> anyhow::Result<AffineProbe> {
        let x0 = match &self.x0 {
            Some(c) => space.project_point(c.clone()).context("--x0")?,
            None => space.origin(),
        };
        let u0 = match &self.u0 {
            Some(c) => space.project_tangent(&x0, c.clone()).context("--u0")?,
            None if space.kind() == SpaceKind::HalfPlane => space.tangent(&x0, vec![0.0, 1.0])?,
            None => space.tangent_basis(&x0).swap_remove(0),
        };
        Ok(AffineProbe::new(space, x0, u0)?)
    }
}
