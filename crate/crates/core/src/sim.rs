//! Direct integration of the classical governor and limit-cycle detection.
//!
//! Integration is fixed-step RK4. Cycles are detected on the Poincaré section
//! `y = 0` (crossed with `y` increasing along the integration direction, within
//! 0.5 of `x₀`); a cycle is accepted once successive return points agree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{self, HopfPoint};
use crate::model::{pontryagin_field, Model, State};
use crate::stability::epsilon_critical;

pub const DEFAULT_DT: f64 = 1e-3;
/// Half width of the section window around `x₀`.
pub const SECTION_HALF_WIDTH: f64 = 0.5;
const CROSSING_T_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeDirection {
    Forward,
    Reversed,
}

impl TimeDirection {
    fn sign(self) -> f64 {
        match self {
            TimeDirection::Forward => 1.0,
            TimeDirection::Reversed => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Outcome {
    Completed,
    DomainExit { t: f64 },
    ConvergedToPoint,
    ConvergedToCycle,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Completed => "Completed",
            Outcome::DomainExit { .. } => "DomainExit",
            Outcome::ConvergedToPoint => "ConvergedToPoint",
            Outcome::ConvergedToCycle => "ConvergedToCycle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    /// Elapsed integration time (positive in both directions).
    pub t: f64,
    pub state: State,
}

/// A section crossing, with the x-range swept since the previous crossing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub t: f64,
    pub state: State,
    pub x_min: f64,
    pub x_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub crossings: Vec<Crossing>,
    pub dt: f64,
    pub direction: TimeDirection,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least the initial sample")
    }

    /// Period and half peak-to-peak x over the last full return, if any.
    pub fn last_loop(&self) -> Option<(f64, f64)> {
        match self.crossings.as_slice() {
            [.., a, b] => Some((b.t - a.t, 0.5 * (b.x_max - b.x_min))),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub direction: TimeDirection,
    /// Keep every `stride`-th step (the final state is always kept).
    pub stride: usize,
    /// Final distance to `P₀` below which the run counts as converged to it.
    pub point_tol: f64,
    /// Pairwise distance of the last three returns for a converged cycle.
    pub cycle_tol: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { direction: TimeDirection::Forward, stride: 1, point_tol: 1e-6, cycle_tol: 1e-5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleSettings {
    pub cauchy_tol: f64,
    pub max_returns: usize,
    /// Stop with `NoCycleFound` once this close to `P₀`.
    pub point_tol: f64,
    /// Candidate cycles whose section point is this close to `P₀` are rejected.
    pub min_radius: f64,
    pub t_max: f64,
}

impl Default for CycleSettings {
    fn default() -> Self {
        Self { cauchy_tol: 1e-7, max_returns: 400, point_tol: 1e-6, min_radius: 1e-4, t_max: 1e5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleEstimate {
    pub period: f64,
    pub amplitude_x: f64,
    pub section_point: State,
    /// Multiplier proxy: ratio of successive return distances.
    pub return_map_contraction: f64,
    /// True when found in forward time.
    pub stable: bool,
    pub returns: usize,
    /// Integration time at acceptance.
    pub t: f64,
}

struct Flow {
    beta: f64,
    alpha: f64,
    eps: f64,
    sign: f64,
}

impl Flow {
    fn new(model: &Model, eps: f64, direction: TimeDirection) -> Result<Self> {
        let alpha = model.require_alpha()?;
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
        }
        Ok(Self { beta: model.beta(), alpha, eps, sign: direction.sign() })
    }

    #[inline]
    fn f(&self, s: [f64; 3]) -> [f64; 3] {
        pontryagin_field(self.beta, self.alpha, self.eps, s).map(|v| v * self.sign)
    }

    #[inline]
    fn rk4(&self, s: [f64; 3], k1: [f64; 3], h: f64) -> [f64; 3] {
        let at = |k: [f64; 3], c: f64| [s[0] + c * k[0], s[1] + c * k[1], s[2] + c * k[2]];
        let k2 = self.f(at(k1, 0.5 * h));
        let k3 = self.f(at(k2, 0.5 * h));
        let k4 = self.f(at(k3, h));
        std::array::from_fn(|i| s[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]))
    }
}

fn hermite(p0: f64, m0: f64, p1: f64, m1: f64, h: f64, th: f64) -> f64 {
    let t2 = th * th;
    let t3 = t2 * th;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0 + (t3 - 2.0 * t2 + th) * h * m0 + (3.0 * t2 - 2.0 * t3) * p1 + (t3 - t2) * h * m1
}

/// Stepping state shared by `integrate`, `detect_cycle` and `departure_from_cycle`.
struct Runner {
    flow: Flow,
    dt: f64,
    x0: f64,
    steps: u64,
    s: [f64; 3],
    f: [f64; 3],
    x_min: f64,
    x_max: f64,
}

impl Runner {
    fn new(model: &Model, eps: f64, start: &State, dt: f64, direction: TimeDirection) -> Result<Self> {
        let flow = Flow::new(model, eps, direction)?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
        }
        start.check_domain()?;
        let s = start.as_array();
        Ok(Self { f: flow.f(s), flow, dt, x0: model.equilibrium().x0, steps: 0, s, x_min: s[0], x_max: s[0] })
    }

    fn t(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    fn state(&self) -> State {
        State::from_array(self.s)
    }

    /// One RK4 step; reports a section crossing inside the step.
    fn advance(&mut self) -> Result<Option<Crossing>> {
        let (s0, f0, t0) = (self.s, self.f, self.t());
        let s1 = self.flow.rk4(s0, f0, self.dt);
        self.steps += 1;
        if !State::from_array(s1).in_domain() {
            return Err(Error::DomainExit { t: self.t() });
        }
        let f1 = self.flow.f(s1);
        self.s = s1;
        self.f = f1;

        let crossing = if s0[1] < 0.0 && s1[1] >= 0.0 { self.locate(t0, s0, f0, s1, f1) } else { None };
        match crossing {
            Some(c) => {
                let x_min = self.x_min.min(c.state.x);
                let x_max = self.x_max.max(c.state.x);
                self.x_min = c.state.x.min(s1[0]);
                self.x_max = c.state.x.max(s1[0]);
                Ok(Some(Crossing { x_min, x_max, ..c }))
            }
            None => {
                self.x_min = self.x_min.min(s1[0]);
                self.x_max = self.x_max.max(s1[0]);
                Ok(None)
            }
        }
    }

    fn locate(&self, t0: f64, s0: [f64; 3], f0: [f64; 3], s1: [f64; 3], f1: [f64; 3]) -> Option<Crossing> {
        let h = self.dt;
        let y = |th: f64| hermite(s0[1], f0[1], s1[1], f1[1], h, th);
        let (mut lo, mut hi) = (0.0, 1.0);
        while (hi - lo) * h > CROSSING_T_TOL {
            let mid = 0.5 * (lo + hi);
            if y(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let th = hi;
        let p: [f64; 3] = std::array::from_fn(|i| hermite(s0[i], f0[i], s1[i], f1[i], h, th));
        if (p[0] - self.x0).abs() >= SECTION_HALF_WIDTH {
            return None;
        }
        let state = State::from_array([p[0], 0.0, p[2]]);
        Some(Crossing { t: t0 + th * h, state, x_min: p[0], x_max: p[0] })
    }
}

/// Integrates from `state0` for `t_max` time units with step `dt`.
///
/// Leaving the domain ends the run with `Outcome::DomainExit`. Otherwise the
/// outcome classifies the end of the run: near `P₀`, on a settled cycle, or neither.
pub fn integrate(model: &Model, eps: f64, state0: &State, dt: f64, t_max: f64) -> Result<Trajectory> {
    integrate_with(model, eps, state0, dt, t_max, &IntegrateOptions::default())
}

pub fn integrate_with(
    model: &Model,
    eps: f64,
    state0: &State,
    dt: f64,
    t_max: f64,
    opts: &IntegrateOptions,
) -> Result<Trajectory> {
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("t_max must be non-negative, got {t_max}")));
    }
    if opts.stride == 0 {
        return Err(Error::InvalidArgument("stride must be at least 1".into()));
    }
    let mut run = Runner::new(model, eps, state0, dt, opts.direction)?;
    let n_steps = (t_max / dt).round() as u64;
    let mut samples = Vec::with_capacity((n_steps / opts.stride as u64 + 2).min(1 << 24) as usize);
    samples.push(Sample { t: 0.0, state: *state0 });
    let mut crossings = Vec::new();
    let mut exit = None;

    while run.steps < n_steps {
        match run.advance() {
            Ok(c) => crossings.extend(c),
            Err(Error::DomainExit { t }) => {
                exit = Some(t);
                break;
            }
            Err(e) => return Err(e),
        }
        if run.steps % opts.stride as u64 == 0 || run.steps == n_steps {
            samples.push(Sample { t: run.t(), state: run.state() });
        }
    }

    let outcome = match exit {
        Some(t) => Outcome::DomainExit { t },
        None => classify_end(model, &run.state(), &crossings, opts),
    };
    Ok(Trajectory { samples, crossings, dt, direction: opts.direction, outcome })
}

fn classify_end(model: &Model, end: &State, crossings: &[Crossing], opts: &IntegrateOptions) -> Outcome {
    let p0 = model.equilibrium().state();
    if end.distance(&p0) < opts.point_tol {
        return Outcome::ConvergedToPoint;
    }
    if let [.., a, b, c] = crossings {
        let settled = a.state.distance(&b.state) <= opts.cycle_tol
            && b.state.distance(&c.state) <= opts.cycle_tol
            && a.state.distance(&c.state) <= opts.cycle_tol;
        if settled && c.state.distance(&p0) > opts.point_tol {
            return Outcome::ConvergedToCycle;
        }
    }
    Outcome::Completed
}

/// Runs until the section returns settle on a cycle.
///
/// Fails with `NoCycleFound` if the trajectory settles on `P₀`, if the return
/// budget or time budget is exhausted, and with `DomainExit` if it leaves the domain.
pub fn detect_cycle(
    model: &Model,
    eps: f64,
    seed: &State,
    direction: TimeDirection,
    dt: f64,
    settings: &CycleSettings,
) -> Result<CycleEstimate> {
    let mut run = Runner::new(model, eps, seed, dt, direction)?;
    let p0 = model.equilibrium().state();
    let mut last: Vec<Crossing> = Vec::with_capacity(5);
    let mut returns = 0;

    while run.t() < settings.t_max {
        let crossing = run.advance()?;
        if run.state().distance(&p0) < settings.point_tol {
            return Err(Error::NoCycleFound { returns });
        }
        let Some(c) = crossing else { continue };
        returns += 1;
        if last.len() == 4 {
            last.remove(0);
        }
        last.push(c);
        if let Some(est) = accept(&last, settings, &p0, direction, returns) {
            return Ok(est);
        }
        if returns >= settings.max_returns {
            break;
        }
    }
    Err(Error::NoCycleFound { returns })
}

fn accept(last: &[Crossing], s: &CycleSettings, p0: &State, dir: TimeDirection, returns: usize) -> Option<CycleEstimate> {
    let [a, b, c, d] = last else { return None };
    let d0 = a.state.distance(&b.state);
    let d1 = b.state.distance(&c.state);
    let d2 = c.state.distance(&d.state);
    let tol = s.cauchy_tol;
    let cauchy = d1 <= tol && d2 <= tol && b.state.distance(&d.state) <= tol;
    if !(cauchy && d1 <= d0 && d2 <= d1) || d.state.distance(p0) < s.min_radius {
        return None;
    }
    Some(CycleEstimate {
        period: d.t - c.t,
        amplitude_x: 0.5 * (d.x_max - d.x_min),
        section_point: d.state,
        return_map_contraction: if d1 > 0.0 { d2 / d1 } else { 0.0 },
        stable: dir == TimeDirection::Forward,
        returns,
        t: d.t,
    })
}

/// Normal-form amplitude `2r|q₁|` with `r = √(γ/(−l₁))`, `γ = γ'(ε − ε_c)`.
pub fn amplitude_prediction(gamma_prime: f64, eps: f64, eps_c: f64, l1: f64, q1_modulus: f64) -> Result<f64> {
    let gamma = gamma_prime * (eps - eps_c);
    if gamma == 0.0 {
        return Ok(0.0);
    }
    if l1 == 0.0 || gamma.signum() != (-l1).signum() {
        return Err(Error::SideMismatch(format!("gamma = {gamma:e}, l1 = {l1:e}")));
    }
    Ok(2.0 * (gamma / -l1).sqrt() * q1_modulus)
}

/// `amplitude_prediction` with every input taken from the model.
pub fn predicted_amplitude(model: &Model, eps: f64) -> Result<f64> {
    let point = HopfPoint::new(model)?;
    let eigen = hopf::eigenvectors_at(&point);
    let l1 = hopf::lyapunov_closed(model)?;
    amplitude_prediction(hopf::transversality(model)?, eps, point.eps_c, l1, eigen.q[0].norm())
}

/// `P₀` shifted along x by the predicted amplitude.
pub fn cycle_seed(model: &Model, eps: f64) -> Result<State> {
    let p0 = model.equilibrium().state();
    Ok(State { x: p0.x + predicted_amplitude(model, eps)?, ..p0 })
}

/// `eps` expressed as a multiple of the model's critical damping.
pub fn eps_from_relative(model: &Model, eps_rel: f64) -> Result<f64> {
    Ok(eps_rel * epsilon_critical(model)?)
}

/// Side of a repelling cycle a forward trajectory is on, read off the drift of
/// the section distance to `P₀` after `settle` returns.
fn drift_outward(model: &Model, eps: f64, start: &State, dt: f64, settle: usize) -> Result<bool> {
    let p0 = model.equilibrium().state();
    let mut run = Runner::new(model, eps, start, dt, TimeDirection::Forward)?;
    let mut radii = Vec::with_capacity(settle + 2);
    while radii.len() < settle + 2 {
        match run.advance() {
            Ok(Some(c)) => radii.push(c.state.distance(&p0)),
            Ok(None) => {}
            Err(Error::DomainExit { .. }) => return Ok(true),
            Err(e) => return Err(e),
        }
        if run.t() > 1e4 {
            return Err(Error::NoCycleFound { returns: radii.len() });
        }
    }
    Ok(radii[settle + 1] > radii[settle])
}

/// Locates a cycle that repels in forward time by bisecting the x-offset of the
/// start point between a side that drifts inward and one that drifts outward.
///
/// `inner` and `outer` are offsets from `x₀`. The bracket is shrunk until it is
/// narrower than `tol`; the returned estimate is measured on a forward run from
/// the bracket, which shadows the cycle for many periods.
pub fn bisect_unstable_cycle(
    model: &Model,
    eps: f64,
    mut inner: f64,
    mut outer: f64,
    dt: f64,
    tol: f64,
) -> Result<CycleEstimate> {
    const SETTLE: usize = 4;
    let p0 = model.equilibrium().state();
    let at = |dx: f64| State { x: p0.x + dx, ..p0 };
    if drift_outward(model, eps, &at(inner), dt, SETTLE)? || !drift_outward(model, eps, &at(outer), dt, SETTLE)? {
        return Err(Error::InvalidArgument(format!("offsets {inner} and {outer} do not bracket a repelling cycle")));
    }
    let mut iterations = 0;
    while (outer - inner).abs() > tol && iterations < 200 {
        let mid = 0.5 * (inner + outer);
        if drift_outward(model, eps, &at(mid), dt, SETTLE)? {
            outer = mid;
        } else {
            inner = mid;
        }
        iterations += 1;
    }

    let mut run = Runner::new(model, eps, &at(inner), dt, TimeDirection::Forward)?;
    let mut last: Vec<Crossing> = Vec::new();
    while last.len() < SETTLE + 3 {
        if let Some(c) = run.advance()? {
            last.push(c);
        }
    }
    let [.., b, c] = last.as_slice() else { unreachable!() };
    let mut estimate = CycleEstimate {
        period: c.t - b.t,
        amplitude_x: 0.5 * (c.x_max - c.x_min),
        section_point: c.state,
        return_map_contraction: f64::NAN,
        stable: false,
        returns: last.len(),
        t: c.t,
    };
    // multiplier proxy from a slightly displaced forward run
    let probe = departure_from_cycle(model, eps, &estimate, 1e-6, 4.0, dt)?;
    if let [first, .., end] = probe.return_distances.as_slice() {
        let n = probe.return_distances.len() as f64 - 1.0;
        estimate.return_map_contraction = (end / first).powf(1.0 / n);
    }
    Ok(estimate)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Departure {
    pub initial: f64,
    pub max_distance: f64,
    /// `max_distance / initial`; infinite if the trajectory left the domain.
    pub ratio: f64,
    /// Distance of each section return from the cycle's section point.
    pub return_distances: Vec<f64>,
}

/// Starts forward in time at the cycle's section point displaced by `offset`
/// in x and records how far section returns drift from it over `periods` periods.
pub fn departure_from_cycle(
    model: &Model,
    eps: f64,
    cycle: &CycleEstimate,
    offset: f64,
    periods: f64,
    dt: f64,
) -> Result<Departure> {
    let start = State { x: cycle.section_point.x + offset, ..cycle.section_point };
    let mut run = Runner::new(model, eps, &start, dt, TimeDirection::Forward)?;
    let initial = offset.abs();
    let mut return_distances = Vec::new();
    let t_end = periods * cycle.period;
    while run.t() < t_end {
        match run.advance() {
            Ok(Some(c)) => return_distances.push(c.state.distance(&cycle.section_point)),
            Ok(None) => {}
            Err(Error::DomainExit { .. }) => {
                return Ok(Departure { initial, max_distance: f64::INFINITY, ratio: f64::INFINITY, return_distances })
            }
            Err(e) => return Err(e),
        }
    }
    let max_distance = return_distances.iter().copied().fold(0.0, f64::max);
    Ok(Departure { initial, max_distance, ratio: max_distance / initial, return_distances })
}
