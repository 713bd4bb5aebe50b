//! Argument definitions and command implementations.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use se2_core::plane::{reconstruct, ring_restrict};
use se2_core::wavelet::{analyze, bargmann_se2};
use se2_core::{FieldGrid, IrrepParams, PlaneFunction, C64};

use crate::error::{CliError, CliResult, EXIT_VERIFICATION};
use crate::io::{csv, pgm, se2f};
use crate::report::to_json;
use crate::verify::{self, Suite, SuiteOutput, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "se2", version, about = "SE(2) wavelet transforms, ring decompositions and their verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wavelet transform of a circle function, written as an SE2F field.
    Transform(TransformArgs),
    /// Ring restriction of a plane function at one frequency radius.
    Project(ProjectArgs),
    /// Direct-integral reconstruction of a plane function.
    Reconstruct(ReconstructArgs),
    /// Lifts a PGM image to an SE2F field through one frequency ring.
    Lift(LiftArgs),
    /// Writes a sampled Gaussian plane function.
    Gaussian(GaussianArgs),
    /// Runs verification suites and writes a JSON report.
    Verify(VerifyArgs),
}

/// `M`, `MxM` or `MxMxT`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub m: usize,
    pub n_theta: Option<usize>,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split('x')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        match parts.as_slice() {
            [m] => Ok(Self { m: *m, n_theta: None }),
            [a, b] | [a, b, _] if a != b => Err(format!("grid must be square, got {a}x{b}")),
            [m, _] => Ok(Self { m: *m, n_theta: None }),
            [m, _, t] => Ok(Self { m: *m, n_theta: Some(*t) }),
            _ => Err("expected M, MxM or MxMxT".to_string()),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n_theta {
            Some(t) => write!(f, "{0}x{0}x{1}", self.m, t),
            None => write!(f, "{0}x{0}", self.m),
        }
    }
}

impl GridSpec {
    fn field(&self, extent: f64) -> CliResult<FieldGrid> {
        let t = self
            .n_theta
            .ok_or_else(|| CliError::Usage(format!("--grid {self} needs an angle count (MxMxT)")))?;
        Ok(FieldGrid::new(self.m, extent, t)?)
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mother").required(true).args(["lambda", "wavelet"])))]
pub struct TransformArgs {
    #[arg(long)]
    pub omega: f64,
    /// Use the minimal uncertainty wavelet with this parameter.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Mother wavelet as a `phi,re,im` CSV.
    #[arg(long)]
    pub wavelet: Option<PathBuf>,
    /// Analysed vector as a `phi,re,im` CSV.
    #[arg(long)]
    pub phi: PathBuf,
    #[arg(long, default_value = "64x64x32")]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 8.0)]
    pub extent: f64,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub omega: f64,
    /// Plane function in SE2F format.
    #[arg(long)]
    pub input: PathBuf,
    /// Number of ring samples.
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Ring density as a `phi,re,im` CSV.
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    /// Also write the projected plane function (SE2F).
    #[arg(long)]
    pub render: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 48)]
    pub nodes: usize,
    #[arg(long = "omega-max", default_value_t = 8.0)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Write the reconstruction (SE2F).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Binary greyscale PGM image.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub omega: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value = "128x128x32")]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 8.0)]
    pub extent: f64,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct GaussianArgs {
    #[arg(long, default_value = "128")]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 8.0)]
    pub extent: f64,
    /// Width: samples `exp(-|x|^2 / (2 sigma^2))`.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Parseval,
    Reproducing,
    Uncertainty,
    Cr,
    Reconstruction,
    Bargmann,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Circle grid size of the test vectors.
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// JSON report destination; standard output when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// CSV tables destination; standard error when absent.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Include wall times in the report (makes it run dependent).
    #[arg(long)]
    pub timings: bool,
}

/// Executes a parsed command and returns the process exit status.
pub fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Transform(a) => transform(a),
        Command::Project(a) => project(a),
        Command::Reconstruct(a) => reconstruct_cmd(a),
        Command::Lift(a) => lift(a),
        Command::Gaussian(a) => gaussian(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn transform(a: TransformArgs) -> CliResult<i32> {
    let p = IrrepParams::new(a.omega)?;
    let phi = csv::read_circle_file(&a.phi)?;
    let grid = a.grid.field(a.extent)?;
    let field = match (a.lambda, &a.wavelet) {
        (Some(lambda), _) => bargmann_se2(lambda, &p, &phi, grid)?,
        (None, Some(path)) => analyze(&p, &csv::read_circle_file(path)?, &phi, grid)?,
        (None, None) => unreachable!("clap requires one of --lambda, --wavelet"),
    };
    se2f::write_field_file(&a.output, &field)?;
    Ok(0)
}

fn project(a: ProjectArgs) -> CliResult<i32> {
    let p = IrrepParams::new(a.omega)?;
    let f = se2f::read_plane_file(&a.input)?;
    let ring = ring_restrict(&f, &p, a.n)?;
    if ring.is_truncated() {
        eprintln!(
            "warning: {} does not decay at the grid boundary (ratio {:e})",
            a.input.display(),
            ring.boundary_leak()
        );
    }
    csv::write_circle_file(&a.output, ring.density())?;
    if let Some(path) = &a.render {
        se2f::write_plane_file(path, &ring.render(f.m(), f.extent())?)?;
    }
    Ok(0)
}

fn reconstruct_cmd(a: ReconstructArgs) -> CliResult<i32> {
    let f = se2f::read_plane_file(&a.input)?;
    let r = reconstruct(&f, a.omega_max, a.nodes, a.n)?;
    println!("relative_l2_error={:.6e}", r.relative_error);
    println!("plancherel={:.16e}", r.plancherel);
    println!("l2_norm_sq={:.16e}", r.l2_norm_sq);
    if let Some(path) = &a.output {
        se2f::write_plane_file(path, &r.plane)?;
    }
    Ok(0)
}

fn lift(a: LiftArgs) -> CliResult<i32> {
    let p = IrrepParams::new(a.omega)?;
    let grid = a.grid.field(a.extent)?;
    let image = pgm::read_file(&a.input, grid.m, a.extent)?;
    let ring = ring_restrict(&image, &p, a.n)?;
    let field = bargmann_se2(a.lambda, &p, ring.density(), grid)?;
    se2f::write_field_file(&a.output, &field)?;
    Ok(0)
}

fn gaussian(a: GaussianArgs) -> CliResult<i32> {
    if !(a.sigma.is_finite() && a.sigma > 0.0) {
        return Err(CliError::Usage(format!("--sigma must be positive, got {}", a.sigma)));
    }
    let s2 = a.sigma * a.sigma;
    let f = PlaneFunction::from_fn(a.grid.m, a.extent, |x| {
        C64::new((-(x[0] * x[0] + x[1] * x[1]) / (2.0 * s2)).exp(), 0.0)
    })?;
    se2f::write_plane_file(&a.output, &f)?;
    Ok(0)
}

fn write_out(path: Option<&PathBuf>, text: &str, fallback: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => crate::io::write_bytes(p, text.as_bytes()),
        None => fallback
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stream>", e)),
    }
}

fn verify_cmd(a: VerifyArgs) -> CliResult<i32> {
    let cfg = VerifyConfig { seed: a.seed, n: a.n };
    let mut out: SuiteOutput = match a.suite {
        SuiteArg::All => verify::run_all(&cfg)?,
        SuiteArg::Parseval => verify::run(Suite::Parseval, &cfg)?,
        SuiteArg::Reproducing => verify::run(Suite::Reproducing, &cfg)?,
        SuiteArg::Uncertainty => verify::run(Suite::Uncertainty, &cfg)?,
        SuiteArg::Cr => verify::run(Suite::Cr, &cfg)?,
        SuiteArg::Reconstruction => verify::run(Suite::Reconstruction, &cfg)?,
        SuiteArg::Bargmann => verify::run(Suite::Bargmann, &cfg)?,
    };
    if !a.timings {
        for r in &mut out.reports {
            r.runtime_ms = None;
        }
    }
    let mut tables = String::new();
    for t in &out.tables {
        tables.push_str(&format!("# {}\n{}", t.name, t.csv));
    }
    write_out(a.table.as_ref(), &tables, &mut std::io::stderr())?;
    write_out(a.report.as_ref(), &to_json(&out.reports), &mut std::io::stdout())?;
    for r in &out.reports {
        eprintln!(
            "{} {} observed={:e} expected={:e}",
            if r.passed { "PASS" } else { "FAIL" },
            r.check_name,
            r.observed,
            r.expected
        );
    }
    Ok(if out.passed() { 0 } else { EXIT_VERIFICATION })
}
