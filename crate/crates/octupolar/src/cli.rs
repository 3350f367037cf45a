//! Command-line front end behind the `octo` binary.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::critical_points::full_topology;
use crate::eigen_solver::{c_eigenpairs, incremental_rank_one};
use crate::eigen_solver::solve_oriented;
use crate::error::{Error, Result};
use crate::lc_distortion::{decompose_gradient, octupolar_tensor, oseen_frank, DirectorGradient, FrankConstants, GradientFile};
use crate::potential::{orient, oriented_tensor, sample_grid, GridMode, OrientedParams, SphereGrid};
use crate::separatrix::{region_scan, separatrix_scan};
use crate::tensor_core::{harmonic_decompose, symmetry_decompose, OctupolarTensor, Tensor3};
use crate::trace_extension::{trace_critical_points, TraceParams};

#[derive(Clone, Debug, Parser)]
#[command(name = "octo", version, about = "Third-rank tensors, octupolar potentials and their critical points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Symmetry and harmonic decompositions of a tensor file.
    Decompose {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Eigenpairs and critical points of an oriented potential.
    Eigen(EigenArgs),
    /// C-eigenpairs and incremental rank-one approximation.
    Ceigen {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value_t = 400)]
        starts: usize,
        /// Also deflate this many rank-one terms.
        #[arg(long, default_value_t = 0)]
        rank_one: usize,
    },
    /// Critical-point counts over a midpoint (ρ, K) grid at fixed χ.
    Scan {
        #[command(flatten)]
        chi: ChiArg,
        #[arg(long, default_value_t = 40)]
        rho_steps: usize,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        k_max: f64,
        #[arg(long, default_value_t = 40)]
        k_steps: usize,
    },
    /// Separatrix height K★(ρ) at fixed χ.
    Separatrix {
        #[command(flatten)]
        chi: ChiArg,
        #[arg(long, default_value_t = 100)]
        rho_steps: usize,
        /// Also count critical points exactly on the curve.
        #[arg(long, alias = "on-separatrix")]
        on_curve: bool,
    },
    /// Critical points of a trace-type potential.
    Trace {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a1: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a2: f64,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "mu")]
        a3: Option<f64>,
        /// A3 = μ A2.
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
    },
    /// Distortion characteristics of a director gradient file.
    Lc {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, num_args = 4, value_names = ["K11", "K22", "K33", "K24"], allow_negative_numbers = true)]
        frank: Option<Vec<f64>>,
    },
    /// Potential values over a sphere or chart grid.
    Grid {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 181)]
        theta_steps: usize,
        #[arg(long, default_value_t = 91)]
        phi_steps: usize,
        #[arg(long, value_enum, default_value_t = GridModeArg::Sphere)]
        mode: GridModeArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridModeArg {
    Sphere,
    North,
    South,
    Contour,
}

impl From<GridModeArg> for GridMode {
    fn from(m: GridModeArg) -> Self {
        match m {
            GridModeArg::Sphere => GridMode::Sphere,
            GridModeArg::North => GridMode::North,
            GridModeArg::South => GridMode::South,
            GridModeArg::Contour => GridMode::Contour,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct ChiArg {
    /// Radians unless --chi-degrees is given.
    #[arg(long, default_value_t = -FRAC_PI_2, allow_negative_numbers = true)]
    pub chi: f64,
    #[arg(long)]
    pub chi_degrees: bool,
}

impl ChiArg {
    pub fn radians(&self) -> f64 {
        if self.chi_degrees {
            self.chi.to_radians()
        } else {
            self.chi
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct SourceArgs {
    /// Tensor file (27 components or the seven-parameter form); oriented first.
    #[arg(long, short, conflicts_with_all = ["rho", "bigk"])]
    pub input: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    #[command(flatten)]
    pub chi: ChiArg,
    #[arg(long = "K", id = "bigk", allow_negative_numbers = true)]
    pub bigk: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct EigenArgs {
    #[command(flatten)]
    pub source: SourceArgs,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyTensorFile {
    Full(Tensor3),
    Octupolar(OctupolarTensor),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn read_tensor(path: &Path) -> Result<Tensor3> {
    match read_json::<AnyTensorFile>(path)? {
        AnyTensorFile::Full(t) => Ok(t),
        AnyTensorFile::Octupolar(o) => Ok(o.to_tensor()),
    }
}

impl SourceArgs {
    fn params(&self) -> Result<OrientedParams> {
        if let Some(path) = &self.input {
            let t = read_tensor(path)?;
            let o = OctupolarTensor::from_tensor(&t, 1e-10)?;
            return Ok(orient(&o)?.params);
        }
        let rho = self.rho.ok_or_else(|| Error::validation("--rho is required without --input"))?;
        let bigk = self.bigk.ok_or_else(|| Error::validation("--K is required without --input"))?;
        OrientedParams::new(rho, self.chi.radians(), bigk)
    }
}

#[derive(Serialize)]
struct DecomposeOut {
    symmetry: crate::tensor_core::SymmetryDecomposition,
    harmonic: crate::tensor_core::HarmonicDecomposition,
}

#[derive(Serialize)]
struct EigenOut {
    eigen: crate::eigen_solver::EigenReport,
    topology: crate::critical_points::TopologyReport,
}

#[derive(Serialize)]
struct CeigenOut {
    classes: usize,
    pairs: Vec<crate::eigen_solver::CEigenTriple>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rank_one: Vec<crate::eigen_solver::RankOneTerm>,
}

#[derive(Serialize)]
struct LcOut {
    characteristics: crate::lc_distortion::DistortionCharacteristics,
    tensor: OctupolarTensor,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy: Option<crate::lc_distortion::FrankEnergy>,
}

/// Fixed 17-significant-digit rendering used in every CSV.
pub fn fmt17(v: f64) -> String {
    format!("{:.16e}", v)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::numerical(e.to_string()))
}

fn json_string<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn json_only(format: Option<Format>, what: &str) -> Result<()> {
    if format == Some(Format::Csv) {
        return Err(Error::validation(format!("{what} only writes JSON")));
    }
    Ok(())
}

fn check_steps(name: &str, n: usize, min: usize) -> Result<()> {
    if n < min || n > 100_000 {
        return Err(Error::validation(format!("{name} must lie in [{min}, 100000]")));
    }
    Ok(())
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var("OCTO_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::validation(format!("OCTO_THREADS must be a positive integer, got {s:?}"))),
        },
    }
}

/// Runs one command and returns what it would write.
pub fn execute(cli: &Cli) -> Result<String> {
    match thread_count()? {
        None => dispatch(cli),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::numerical(e.to_string()))?;
            pool.install(|| dispatch(cli))
        }
    }
}

/// Runs one command and writes its output to the file or stdout.
pub fn run(cli: &Cli) -> Result<()> {
    let out = execute(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, out)?,
        None => {
            use std::io::Write;
            match std::io::stdout().write_all(out.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<String> {
    let format = cli.format;
    match &cli.command {
        Command::Decompose { input } => {
            json_only(format, "decompose")?;
            let t = read_tensor(input)?;
            json_string(&DecomposeOut { symmetry: symmetry_decompose(&t), harmonic: harmonic_decompose(&t) })
        }
        Command::Eigen(args) => {
            json_only(format, "eigen")?;
            let p = args.source.params()?;
            let sol = solve_oriented(&p)?;
            let topology = full_topology(&p)?;
            json_string(&EigenOut { eigen: sol.report(), topology })
        }
        Command::Ceigen { input, starts, rank_one } => {
            json_only(format, "ceigen")?;
            check_steps("--starts", *starts, 1)?;
            let t = read_tensor(input)?;
            let pairs = c_eigenpairs(&t, *starts)?;
            let rank_one = if *rank_one > 0 { incremental_rank_one(&t, *rank_one, 1e-12)? } else { Vec::new() };
            json_string(&CeigenOut { classes: pairs.len(), pairs, rank_one })
        }
        Command::Scan { chi, rho_steps, k_max, k_steps } => {
            check_steps("--rho-steps", *rho_steps, 1)?;
            check_steps("--k-steps", *k_steps, 1)?;
            if !(k_max.is_finite() && *k_max > 0.0) {
                return Err(Error::validation("--k-max must be positive"));
            }
            let rows = region_scan(chi.radians(), *rho_steps, *k_max, *k_steps)?;
            if format == Some(Format::Json) {
                return json_string(&rows);
            }
            csv_string(
                &["rho", "chi", "K", "count"],
                rows.iter().map(|r| {
                    vec![fmt17(r.rho), fmt17(r.chi), fmt17(r.bigk), r.count.map(|c| c.to_string()).unwrap_or_default()]
                }),
            )
        }
        Command::Separatrix { chi, rho_steps, on_curve } => {
            check_steps("--rho-steps", *rho_steps, 2)?;
            let rows = separatrix_scan(chi.radians(), *rho_steps)?;
            if format == Some(Format::Json) {
                return json_string(&rows);
            }
            let mut header = vec!["rho", "chi", "k_star", "s_star", "branch"];
            if *on_curve {
                header.push("count");
            }
            csv_string(
                &header,
                rows.iter().map(|r| {
                    let branch = serde_json::to_value(r.branch).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                    let mut row = vec![fmt17(r.rho), fmt17(r.chi), fmt17(r.k_star), fmt17(r.s_star), branch];
                    if *on_curve {
                        row.push(r.count.map(|c| c.to_string()).unwrap_or_default());
                    }
                    row
                }),
            )
        }
        Command::Trace { a1, a2, a3, mu } => {
            json_only(format, "trace")?;
            let p = match (a3, mu) {
                (_, Some(mu)) if *a1 == 0.0 => TraceParams::from_mu(*a2, *mu)?,
                (_, Some(_)) => return Err(Error::validation("--mu requires A1 = 0")),
                (Some(a3), None) => TraceParams::new(*a1, *a2, *a3)?,
                (None, None) => return Err(Error::validation("give --a3 or --mu")),
            };
            json_string(&trace_critical_points(&p)?)
        }
        Command::Lc { input, frank } => {
            json_only(format, "lc")?;
            let dg = DirectorGradient::try_from(read_json::<GradientFile>(input)?)?;
            let characteristics = decompose_gradient(&dg)?;
            let energy = match frank.as_deref() {
                Some([k11, k22, k33, k24]) => {
                    let k = FrankConstants { k11: *k11, k22: *k22, k33: *k33, k24: *k24 };
                    Some(oseen_frank(&characteristics, &k)?)
                }
                _ => None,
            };
            json_string(&LcOut { characteristics, tensor: octupolar_tensor(&dg), energy })
        }
        Command::Grid { source, theta_steps, phi_steps, mode } => {
            check_steps("--theta-steps", *theta_steps, 2)?;
            check_steps("--phi-steps", *phi_steps, 2)?;
            let p = source.params()?;
            let grid = SphereGrid::new(*theta_steps, *phi_steps)?;
            let rows = sample_grid(&oriented_tensor(&p), &grid, (*mode).into());
            if format == Some(Format::Json) {
                return json_string(&rows);
            }
            csv_string(
                &["theta", "phi", "x1", "x2", "x3", "phi_value"],
                rows.iter().map(|r| [r.theta, r.phi, r.x1, r.x2, r.x3, r.phi_value].iter().map(|v| fmt17(*v)).collect()),
            )
        }
    }
}
