//! Command layer behind the `watt-hopf` binary.
//!
//! Every subcommand is a plain function returning a report, so the same logic
//! is reachable from tests and examples without spawning a process.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::hopf::{self, HopfPoint, Region};
use crate::model::{Model, ModelDescriptor, State, TorqueJet};
use crate::sim::{self, IntegrateOptions, Outcome, Trajectory};
use crate::stability::{self, epsilon_critical, GeneralJet, Stability, Verdict};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const UNSTABLE: i32 = 1;
    pub const CRITICAL: i32 = 2;
    pub const USAGE: i32 = 64;
    pub const SOFTWARE: i32 = 70;
    pub const IO: i32 = 74;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error(transparent)]
    Analysis(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } | CliError::Csv { .. } => exit::IO,
            CliError::Analysis(
                Error::Domain(_) | Error::InvalidArgument(_) | Error::UnsupportedModel(_) | Error::SideMismatch(_),
            ) => exit::USAGE,
            CliError::Analysis(_) => exit::SOFTWARE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io { path: PathBuf::from("<stdout>"), source }
}

fn stability_code(s: Stability) -> i32 {
    match s {
        Stability::AsymptoticallyStable => exit::OK,
        Stability::Unstable => exit::UNSTABLE,
        Stability::Critical => exit::CRITICAL,
    }
}

// ---------------------------------------------------------------------------
// argument definitions

#[derive(Debug, Parser)]
#[command(name = "watt-hopf", version, about = "Stability and Hopf bifurcation analysis of the Watt governor")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the equilibrium at a given damping.
    #[command(allow_negative_numbers = true)]
    Stability(StabilityArgs),
    /// First Lyapunov coefficient, S/U region and transversality.
    #[command(allow_negative_numbers = true)]
    L1(L1Args),
    /// Scan a (beta, alpha) grid and write the region table and boundary curve.
    Grid(GridArgs),
    /// Write only the l1 = 0 boundary curve.
    HopfCurve(CurveArgs),
    /// Integrate a trajectory and report its long-time behaviour.
    #[command(allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Stability of a general governor from its local data.
    #[command(allow_negative_numbers = true)]
    General(GeneralArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Equilibrium parameter, 0 < beta < 1.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Amplitude of the classical torque alpha*cos(x).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Torque jet a1,a2,a3 at the equilibrium.
    #[arg(long, allow_hyphen_values = true)]
    pub jet: Option<String>,
    /// JSON model descriptor.
    #[arg(long, conflicts_with_all = ["beta", "alpha", "jet"])]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EpsArgs {
    /// Damping.
    #[arg(long, conflicts_with = "eps_rel")]
    pub eps: Option<f64>,
    /// Damping as a multiple of the critical value.
    #[arg(long)]
    pub eps_rel: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub eps: EpsArgs,
    /// Half-width of the Critical band around eps_c.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    Closed,
    Numeric,
    #[default]
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct L1Args {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub spec: GridSpec,
    #[arg(long, default_value = "grid.csv")]
    pub out: PathBuf,
    /// Boundary file; defaults to hopf_curve.csv next to --out.
    #[arg(long)]
    pub curve_out: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub curve_samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long, default_value = "hopf_curve.csv")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub eps: EpsArgs,
    /// Initial state x,y,z; defaults to the equilibrium shifted by 0.05 in x.
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    #[arg(long, default_value_t = sim::DEFAULT_DT)]
    pub dt: f64,
    #[arg(long, default_value_t = 2000.0)]
    pub tmax: f64,
    /// Write every n-th step.
    #[arg(long, default_value_t = 100)]
    pub stride: usize,
    #[arg(long, default_value = "trajectory.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GeneralArgs {
    /// Friction derivative h'(0).
    #[arg(long)]
    pub hprime0: f64,
    #[arg(long)]
    pub m: f64,
    /// Flywheel inertia.
    #[arg(long = "I")]
    pub inertia: f64,
    #[arg(long)]
    pub s0: f64,
    #[arg(long)]
    pub sprime0: f64,
    #[arg(long)]
    pub mprime0: f64,
    /// Equilibrium arm angle, rad.
    #[arg(long)]
    pub phi0: f64,
    #[arg(long, default_value_t = stability::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

impl ModelArgs {
    pub fn pontryagin(beta: f64, alpha: f64) -> Self {
        Self { beta: Some(beta), alpha: Some(alpha), ..Self::default() }
    }

    /// The model plus the damping carried by a descriptor file, if any.
    pub fn resolve(&self) -> CliResult<(Model, Option<f64>)> {
        if let Some(path) = &self.model {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let desc = ModelDescriptor::from_json(&text)?;
            return Ok((desc.to_model()?, desc.eps));
        }
        let beta = self.beta.ok_or_else(|| CliError::Usage("one of --beta or --model is required".into()))?;
        let jet = match &self.jet {
            Some(text) => {
                let [a1, a2, a3] = parse_triple(text, "--jet")?;
                Some([a1, a2, a3])
            }
            None => None,
        };
        let desc = ModelDescriptor { beta, alpha: self.alpha, jet, eps: None };
        Ok((desc.to_model()?, None))
    }
}

impl EpsArgs {
    pub fn resolve(&self, model: &Model, fallback: Option<f64>) -> CliResult<f64> {
        match (self.eps, self.eps_rel, fallback) {
            (Some(eps), _, _) => Ok(eps),
            (None, Some(rel), _) => Ok(sim::eps_from_relative(model, rel)?),
            (None, None, Some(eps)) => Ok(eps),
            (None, None, None) => Err(CliError::Usage("one of --eps or --eps-rel is required".into())),
        }
    }
}

fn parse_triple(text: &str, flag: &str) -> CliResult<[f64; 3]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("{flag}: {e}")))?;
    parts.try_into().map_err(|p: Vec<f64>| CliError::Usage(format!("{flag} expects 3 values, got {}", p.len())))
}

// ---------------------------------------------------------------------------
// machine-readable summary

/// The `--json` summary; fields that do not apply to a command are null.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub verdict: Option<String>,
    pub eps_c: Option<f64>,
    pub omega0: Option<f64>,
    pub l1_closed: Option<f64>,
    pub l1_numeric: Option<f64>,
    pub gamma_prime: Option<f64>,
    pub region: Option<String>,
}

fn write_json(out: &mut dyn Write, summary: &Summary) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, summary).map_err(|e| stdout_err(e.into()))?;
    writeln!(out).map_err(stdout_err)
}

// ---------------------------------------------------------------------------
// stability

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub eps: f64,
    pub eps_c: f64,
    pub omega0: f64,
}

impl StabilityReport {
    pub fn exit_code(&self) -> i32 {
        stability_code(self.verdict.stability)
    }

    pub fn summary(&self) -> Summary {
        Summary {
            verdict: Some(self.verdict.stability.label().into()),
            eps_c: Some(self.eps_c),
            omega0: Some(self.omega0),
            ..Summary::default()
        }
    }
}

pub fn stability_report(model: &Model, eps: f64, tol: f64) -> crate::Result<StabilityReport> {
    Ok(StabilityReport {
        verdict: stability::classify_dimensionless(model, eps, tol)?,
        eps,
        eps_c: epsilon_critical(model)?,
        omega0: model.omega0(),
    })
}

pub fn cmd_stability(args: &StabilityArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (model, eps0) = args.model.resolve()?;
    let eps = args.eps.resolve(&model, eps0)?;
    let r = stability_report(&model, eps, args.tol)?;
    if args.json {
        write_json(out, &r.summary())?;
    } else {
        writeln!(out, "verdict  {}", r.verdict.stability.label()).map_err(stdout_err)?;
        writeln!(out, "eps      {}", r.eps).map_err(stdout_err)?;
        writeln!(out, "eps_c    {}", r.eps_c).map_err(stdout_err)?;
        writeln!(out, "margin   {}", r.verdict.margin).map_err(stdout_err)?;
    }
    Ok(r.exit_code())
}

// ---------------------------------------------------------------------------
// l1

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L1Report {
    pub closed: Option<f64>,
    pub numeric: Option<f64>,
    pub region: Region,
    pub certified: bool,
    pub gamma_prime: f64,
    pub eps_c: f64,
    pub omega0: f64,
}

impl L1Report {
    pub fn discrepancy(&self) -> Option<f64> {
        Some((self.closed? - self.numeric?).abs())
    }

    pub fn summary(&self) -> Summary {
        Summary {
            verdict: None,
            eps_c: Some(self.eps_c),
            omega0: Some(self.omega0),
            l1_closed: self.closed,
            l1_numeric: self.numeric,
            gamma_prime: Some(self.gamma_prime),
            region: Some(self.region.code().into()),
        }
    }
}

pub fn l1_report(model: &Model, method: Method) -> crate::Result<L1Report> {
    let point = HopfPoint::new(model)?;
    let closed = match method {
        Method::Numeric => None,
        _ => Some(hopf::lyapunov_closed(model)?),
    };
    let numeric = match method {
        Method::Closed => None,
        _ => Some(hopf::lyapunov_numeric(&point, &hopf::eigenvectors_at(&point))?.l1),
    };
    let verdict = hopf::classify_region(model)?;
    Ok(L1Report {
        closed,
        numeric,
        region: verdict.region,
        certified: verdict.certified,
        gamma_prime: hopf::transversality(model)?,
        eps_c: point.eps_c,
        omega0: point.omega0,
    })
}

pub fn cmd_l1(args: &L1Args, out: &mut dyn Write) -> CliResult<i32> {
    let (model, _) = args.model.resolve()?;
    let r = l1_report(&model, args.method)?;
    if args.json {
        write_json(out, &r.summary())?;
        return Ok(exit::OK);
    }
    let mut w = |line: String| writeln!(out, "{line}").map_err(stdout_err);
    if let Some(v) = r.closed {
        w(format!("l1 closed    {v}"))?;
    }
    if let Some(v) = r.numeric {
        w(format!("l1 numeric   {v}"))?;
    }
    if let Some(d) = r.discrepancy() {
        w(format!("discrepancy  {d:e}"))?;
    }
    let tag = if r.certified { "" } else { " (uncertified)" };
    w(format!("region       {}{tag}", r.region.code()))?;
    w(format!("gamma'       {}", r.gamma_prime))?;
    w(format!("eps_c        {}", r.eps_c))?;
    Ok(exit::OK)
}

// ---------------------------------------------------------------------------
// grid and boundary curve

pub const BETA_CLAMP: (f64, f64) = (0.001, 0.999);

#[derive(Debug, Clone, Copy, PartialEq, Args, Serialize, Deserialize)]
pub struct GridSpec {
    #[arg(long, default_value_t = 0.1)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 0.9)]
    pub beta_max: f64,
    #[arg(long, default_value_t = 9)]
    pub beta_steps: usize,
    #[arg(long, default_value_t = 0.25)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 5)]
    pub alpha_steps: usize,
    /// Spacing of the alpha axis.
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub alpha_spacing: Spacing,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            beta_min: 0.1,
            beta_max: 0.9,
            beta_steps: 9,
            alpha_min: 0.25,
            alpha_max: 4.0,
            alpha_steps: 5,
            alpha_spacing: Spacing::Log,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

impl GridSpec {
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.beta_min < self.beta_max) || !(self.alpha_min < self.alpha_max) {
            return bad("grid bounds must satisfy min < max".into());
        }
        if self.beta_steps < 2 || self.alpha_steps < 2 {
            return bad("grid needs at least 2 steps per axis".into());
        }
        if !(self.alpha_min > 0.0) {
            return bad(format!("alpha_min must be positive, got {}", self.alpha_min));
        }
        Ok(())
    }

    /// β nodes, clamped into `[0.001, 0.999]`.
    pub fn betas(&self) -> Vec<f64> {
        linspace(self.beta_min, self.beta_max, self.beta_steps)
            .into_iter()
            .map(|b| b.clamp(BETA_CLAMP.0, BETA_CLAMP.1))
            .collect()
    }

    pub fn alphas(&self) -> Vec<f64> {
        match self.alpha_spacing {
            Spacing::Linear => linspace(self.alpha_min, self.alpha_max, self.alpha_steps),
            Spacing::Log => {
                let ratio = (self.alpha_max / self.alpha_min).powf(1.0 / (self.alpha_steps - 1) as f64);
                let mut v: Vec<f64> = (0..self.alpha_steps).map(|i| self.alpha_min * ratio.powi(i as i32)).collect();
                *v.last_mut().unwrap() = self.alpha_max;
                v
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub beta: f64,
    pub alpha: f64,
    pub eps_c: f64,
    pub g: f64,
    pub l1: f64,
    pub region: String,
}

pub fn grid_row(beta: f64, alpha: f64) -> crate::Result<GridRow> {
    let model = Model::pontryagin(beta, alpha)?;
    Ok(GridRow {
        beta,
        alpha,
        eps_c: epsilon_critical(&model)?,
        g: hopf::g_discriminant(beta, alpha),
        l1: hopf::lyapunov_closed_pontryagin(beta, alpha)?,
        region: hopf::classify_region(&model)?.region.code().into(),
    })
}

/// All grid rows, β outer; cells are computed in parallel and returned in order.
pub fn grid_rows(spec: &GridSpec) -> crate::Result<Vec<GridRow>> {
    spec.validate()?;
    let alphas = spec.alphas();
    let cells: Vec<(f64, f64)> = spec.betas().into_iter().flat_map(|b| alphas.iter().map(move |&a| (b, a))).collect();
    cells.par_iter().map(|&(b, a)| grid_row(b, a)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub beta: f64,
    pub alpha: f64,
}

/// `α = h(β)` at `samples` evenly spaced β in `[√(3/5) + 1e−6, 0.999]`.
pub fn hopf_curve(samples: usize) -> crate::Result<Vec<CurvePoint>> {
    if samples < 2 {
        return Err(Error::InvalidArgument("boundary curve needs at least 2 samples".into()));
    }
    linspace(hopf::boundary_beta_min() + 1e-6, BETA_CLAMP.1, samples)
        .into_iter()
        .map(|beta| Ok(CurvePoint { beta, alpha: hopf::hopf_boundary(beta)? }))
        .collect()
}

pub fn cmd_grid(args: &GridArgs, out: &mut dyn Write) -> CliResult<i32> {
    let rows = grid_rows(&args.spec)?;
    let curve = hopf_curve(args.curve_samples)?;
    let curve_path = args.curve_out.clone().unwrap_or_else(|| sibling(&args.out, "hopf_curve.csv"));
    write_csv(&args.out, &rows)?;
    write_csv(&curve_path, &curve)?;
    writeln!(out, "{} rows -> {}", rows.len(), args.out.display()).map_err(stdout_err)?;
    writeln!(out, "{} boundary points -> {}", curve.len(), curve_path.display()).map_err(stdout_err)?;
    Ok(exit::OK)
}

pub fn cmd_hopf_curve(args: &CurveArgs, out: &mut dyn Write) -> CliResult<i32> {
    let curve = hopf_curve(args.samples)?;
    write_csv(&args.out, &curve)?;
    writeln!(out, "{} boundary points -> {}", curve.len(), args.out.display()).map_err(stdout_err)?;
    Ok(exit::OK)
}

fn sibling(path: &Path, name: &str) -> PathBuf {
    match path.parent() {
        Some(dir) => dir.join(name),
        None => PathBuf::from(name),
    }
}

// ---------------------------------------------------------------------------
// simulate

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub fn trajectory_rows(tr: &Trajectory) -> Vec<TrajectoryRow> {
    tr.samples.iter().map(|s| TrajectoryRow { t: s.t, x: s.state.x, y: s.state.y, z: s.state.z }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub outcome: Outcome,
    pub eps: f64,
    pub eps_c: f64,
    pub omega0: f64,
    /// Period and amplitude of the last loop, when the run settled on a cycle.
    pub period: Option<f64>,
    pub amplitude_x: Option<f64>,
    /// Normal-form amplitude, when a cycle is predicted on this side of `ε_c`.
    pub predicted_amplitude: Option<f64>,
}

impl SimulateReport {
    pub fn summary(&self) -> Summary {
        Summary {
            verdict: Some(self.outcome.label().into()),
            eps_c: Some(self.eps_c),
            omega0: Some(self.omega0),
            ..Summary::default()
        }
    }
}

pub fn simulate(model: &Model, eps: f64, start: &State, dt: f64, t_max: f64, stride: usize) -> crate::Result<(Trajectory, SimulateReport)> {
    let opts = IntegrateOptions { stride, ..IntegrateOptions::default() };
    let tr = sim::integrate_with(model, eps, start, dt, t_max, &opts)?;
    let cycle = match tr.outcome {
        Outcome::ConvergedToCycle => tr.last_loop(),
        _ => None,
    };
    let predicted = sim::predicted_amplitude(model, eps).ok().filter(|a| *a > 0.0);
    let report = SimulateReport {
        outcome: tr.outcome,
        eps,
        eps_c: epsilon_critical(model)?,
        omega0: model.omega0(),
        period: cycle.map(|c| c.0),
        amplitude_x: cycle.map(|c| c.1),
        predicted_amplitude: predicted,
    };
    Ok((tr, report))
}

pub fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (model, eps0) = args.model.resolve()?;
    let eps = args.eps.resolve(&model, eps0)?;
    let start = match &args.start {
        Some(text) => State::from_array(parse_triple(text, "--start")?),
        None => {
            let p0 = model.equilibrium().state();
            State { x: p0.x + 0.05, ..p0 }
        }
    };
    let (tr, r) = simulate(&model, eps, &start, args.dt, args.tmax, args.stride)?;
    write_csv(&args.out, &trajectory_rows(&tr))?;
    if args.json {
        write_json(out, &r.summary())?;
        return Ok(exit::OK);
    }
    let mut w = |line: String| writeln!(out, "{line}").map_err(stdout_err);
    w(format!("outcome    {}", r.outcome.label()))?;
    if let Outcome::DomainExit { t } = r.outcome {
        w(format!("exit at    t = {t}"))?;
    }
    w(format!("samples    {} -> {}", tr.samples.len(), args.out.display()))?;
    if let (Some(p), Some(a)) = (r.period, r.amplitude_x) {
        w(format!("period     {p}"))?;
        match r.predicted_amplitude {
            Some(pred) => w(format!("amplitude  {a} measured, {pred} predicted ({:+.1}%)", 100.0 * (a / pred - 1.0)))?,
            None => w(format!("amplitude  {a} measured, no prediction on this side"))?,
        }
    }
    Ok(exit::OK)
}

// ---------------------------------------------------------------------------
// general

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralReport {
    pub verdict: Verdict,
    pub threshold: f64,
    pub eta: f64,
    pub product: f64,
}

impl GeneralReport {
    pub fn exit_code(&self) -> i32 {
        stability_code(self.verdict.stability)
    }
}

pub fn general_report(jet: &GeneralJet, tol: f64) -> crate::Result<GeneralReport> {
    Ok(GeneralReport {
        verdict: stability::classify_general(jet, tol)?,
        threshold: jet.friction_threshold(),
        eta: stability::nonuniformity(jet)?,
        product: stability::vyshnegradskii_product(jet)?,
    })
}

pub fn cmd_general(args: &GeneralArgs, out: &mut dyn Write) -> CliResult<i32> {
    let jet = GeneralJet {
        hprime0: args.hprime0,
        m: args.m,
        inertia: args.inertia,
        s0: args.s0,
        sprime0: args.sprime0,
        mprime0: args.mprime0,
        phi0: args.phi0,
    };
    let r = general_report(&jet, args.tol)?;
    if args.json {
        let summary = Summary { verdict: Some(r.verdict.stability.label().into()), ..Summary::default() };
        write_json(out, &summary)?;
    } else {
        writeln!(out, "verdict    {}", r.verdict.stability.label()).map_err(stdout_err)?;
        writeln!(out, "threshold  {}", r.threshold).map_err(stdout_err)?;
        writeln!(out, "eta        {}", r.eta).map_err(stdout_err)?;
        writeln!(out, "product    {}", r.product).map_err(stdout_err)?;
    }
    Ok(r.exit_code())
}

// ---------------------------------------------------------------------------
// csv

/// Writes `rows` with a header line, LF endings and shortest round-trip floats.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> CliResult<()> {
    let err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(io::BufWriter::new(file));
    for row in rows {
        w.serialize(row).map_err(err)?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> CliResult<Vec<T>> {
    let err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut r = csv::Reader::from_path(path).map_err(err)?;
    r.deserialize().collect::<std::result::Result<_, _>>().map_err(err)
}

// ---------------------------------------------------------------------------
// entry points

pub fn execute(command: &Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Stability(a) => cmd_stability(a, out),
        Command::L1(a) => cmd_l1(a, out),
        Command::Grid(a) => cmd_grid(a, out),
        Command::HopfCurve(a) => cmd_hopf_curve(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::General(a) => cmd_general(a, out),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return exit::USAGE;
            }
            let _ = write!(out, "{e}");
            return exit::OK;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Jet form of a classical-torque model, handy for cross-checks.
pub fn pontryagin_jet_model(beta: f64, alpha: f64) -> crate::Result<Model> {
    Model::from_jet(beta, TorqueJet::pontryagin(beta, alpha))
}
