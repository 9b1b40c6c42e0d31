//! Dimensionless Watt governor family.
//!
//! After rescaling, the governor/engine system reads
//!
//! ```text
//! x' = y
//! y' = z² sin x cos x − sin x − ε y
//! z' = T(x) − G
//! ```
//!
//! on `(0, π/2) × ℝ × [0, ∞)`. Equilibria are parametrized by `β = cos x₀`,
//! which puts the equilibrium at `(arccos β, 0, β^{-1/2})`. Local analysis only
//! needs the torque jet `(T'(x₀), T''(x₀), T'''(x₀))`; simulation needs the
//! full torque, which is available for the classical `T(x) = α cos x` case.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Derivatives `(a₁, a₂, a₃) = (T'(x₀), T''(x₀), T'''(x₀))` of the torque at equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorqueJet {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl TorqueJet {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self { a1, a2, a3 }
    }

    /// Jet of `T(x) = α cos x` at `x₀ = arccos β`.
    pub fn pontryagin(beta: f64, alpha: f64) -> Self {
        let s = (1.0 - beta * beta).sqrt();
        Self { a1: -alpha * s, a2: -alpha * beta, a3: alpha * s }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }
}

/// A member of the dimensionless family, pinned at its equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    beta: f64,
    jet: TorqueJet,
    pontryagin_alpha: Option<f64>,
}

const JET_CONSISTENCY_TOL: f64 = 1e-12;

impl Model {
    /// Classical governor with `T(x) = α cos x` and load `G = αβ`.
    pub fn pontryagin(beta: f64, alpha: f64) -> Result<Self> {
        check_beta(beta)?;
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(domain(format!("alpha must be positive, got {alpha}")));
        }
        Ok(Self { beta, jet: TorqueJet::pontryagin(beta, alpha), pontryagin_alpha: Some(alpha) })
    }

    /// Model known only through its torque jet. Supports local analysis, not simulation.
    pub fn from_jet(beta: f64, jet: TorqueJet) -> Result<Self> {
        check_beta(beta)?;
        check_jet(&jet)?;
        Ok(Self { beta, jet, pontryagin_alpha: None })
    }

    /// General constructor; when `alpha` is given the jet must be the one of `α cos x`.
    pub fn new(beta: f64, jet: TorqueJet, alpha: Option<f64>) -> Result<Self> {
        match alpha {
            None => Self::from_jet(beta, jet),
            Some(alpha) => {
                let model = Self::pontryagin(beta, alpha)?;
                let expected = model.jet.as_array();
                for (got, want) in jet.as_array().iter().zip(expected) {
                    if (got - want).abs() > JET_CONSISTENCY_TOL * want.abs().max(1.0) {
                        return Err(domain(format!(
                            "jet {:?} is inconsistent with alpha = {alpha} (expected {expected:?})",
                            jet.as_array()
                        )));
                    }
                }
                Ok(model)
            }
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn jet(&self) -> TorqueJet {
        self.jet
    }

    pub fn pontryagin_alpha(&self) -> Option<f64> {
        self.pontryagin_alpha
    }

    /// Frequency of the critical eigenvalue pair, `√((1−β²)/β)`.
    pub fn omega0(&self) -> f64 {
        omega0_unchecked(self.beta)
    }

    pub fn equilibrium(&self) -> Equilibrium {
        equilibrium(self)
    }

    /// Full torque `T(x)`, when known.
    pub fn torque(&self, x: f64) -> Option<f64> {
        self.pontryagin_alpha.map(|alpha| alpha * x.cos())
    }

    /// Load term `G = T(x₀)`, when the torque is known.
    pub fn load(&self) -> Option<f64> {
        self.pontryagin_alpha.map(|alpha| alpha * self.beta)
    }

    /// Right-hand side of the dimensionless system at `state`.
    pub fn vector_field(&self, state: &State, eps: f64) -> Result<[f64; 3]> {
        let alpha = self.require_alpha()?;
        state.check_domain()?;
        Ok(pontryagin_field(self.beta, alpha, eps, state.as_array()))
    }

    pub(crate) fn require_alpha(&self) -> Result<f64> {
        self.pontryagin_alpha.ok_or_else(|| {
            Error::UnsupportedModel(
                "the full torque is unknown for a jet-only model; only local analysis is available"
                    .into(),
            )
        })
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("beta must lie in (0, 1), got {beta}")))
    }
}

fn check_jet(jet: &TorqueJet) -> Result<()> {
    if !jet.as_array().iter().all(|a| a.is_finite()) {
        return Err(domain("torque jet entries must be finite"));
    }
    if jet.a1 >= 0.0 {
        return Err(domain(format!("T'(x0) must be negative, got {}", jet.a1)));
    }
    Ok(())
}

/// Field of the classical governor, no domain checks.
#[inline]
pub(crate) fn pontryagin_field(beta: f64, alpha: f64, eps: f64, s: [f64; 3]) -> [f64; 3] {
    let [x, y, z] = s;
    let (sin_x, cos_x) = x.sin_cos();
    [y, z * z * sin_x * cos_x - sin_x - eps * y, alpha * (cos_x - beta)]
}

/// Point of the state space `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    /// Arm angle, rad.
    pub x: f64,
    /// Scaled arm angular rate.
    pub y: f64,
    /// Scaled flywheel speed.
    pub z: f64,
}

impl State {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }

    pub fn in_domain(&self) -> bool {
        self.x > 0.0 && self.x < FRAC_PI_2 && self.y.is_finite() && self.z >= 0.0 && self.z.is_finite()
    }

    pub fn check_domain(&self) -> Result<()> {
        if self.in_domain() {
            Ok(())
        } else {
            Err(domain(format!(
                "state ({}, {}, {}) outside (0, pi/2) x R x [0, inf)",
                self.x, self.y, self.z
            )))
        }
    }

    pub fn distance(&self, other: &State) -> f64 {
        let d = [self.x - other.x, self.y - other.y, self.z - other.z];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

/// The equilibrium `(arccos β, 0, β^{-1/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
}

impl Equilibrium {
    pub fn state(&self) -> State {
        State::new(self.x0, self.y0, self.z0)
    }
}

pub fn equilibrium(model: &Model) -> Equilibrium {
    let beta = model.beta;
    Equilibrium { x0: beta.acos(), y0: 0.0, z0: 1.0 / beta.sqrt() }
}

pub fn omega0(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(omega0_unchecked(beta))
}

#[inline]
fn omega0_unchecked(beta: f64) -> f64 {
    ((1.0 - beta * beta) / beta).sqrt()
}

/// Physical parameters of the classical governor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Friction constant `b`.
    pub friction: f64,
    /// Ball mass `m`.
    pub mass: f64,
    /// Arm length `l`.
    pub arm_length: f64,
    /// Gravitational acceleration `g`.
    pub gravity: f64,
    /// Flywheel moment of inertia `I`.
    pub inertia: f64,
    /// Transmission ratio `c`.
    pub transmission: f64,
    /// Torque amplitude `μ` of `M(φ) = μ cos φ`.
    pub torque_amplitude: f64,
    /// Load torque `F`.
    pub load: f64,
}

/// Dimensionless model plus its damping parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimensionless {
    pub model: Model,
    pub eps: f64,
}

/// `ε = (b/m)√(l/g)`, `α = clμ/(gI)`, `β = F/μ`.
pub fn dimensionless_from_physical(p: &PhysicalParams) -> Result<Dimensionless> {
    let all = [
        ("b", p.friction),
        ("m", p.mass),
        ("l", p.arm_length),
        ("g", p.gravity),
        ("I", p.inertia),
        ("c", p.transmission),
        ("mu", p.torque_amplitude),
        ("F", p.load),
    ];
    for (name, v) in all {
        if !(v.is_finite() && v > 0.0) {
            return Err(domain(format!("{name} must be positive, got {v}")));
        }
    }
    if p.load >= p.torque_amplitude {
        return Err(domain(format!(
            "load F = {} must be below mu = {}; no equilibrium angle otherwise",
            p.load, p.torque_amplitude
        )));
    }
    let eps = p.friction / p.mass * (p.arm_length / p.gravity).sqrt();
    let alpha = p.transmission * p.arm_length * p.torque_amplitude / (p.gravity * p.inertia);
    let beta = p.load / p.torque_amplitude;
    Ok(Dimensionless { model: Model::pontryagin(beta, alpha)?, eps })
}

/// JSON model descriptor: `{"beta": r, "alpha": r|null, "jet": [a1,a2,a3]|null, "eps": r}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub beta: f64,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub jet: Option<[f64; 3]>,
    #[serde(default)]
    pub eps: Option<f64>,
}

impl ModelDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("model descriptor: {e}")))
    }

    pub fn to_model(&self) -> Result<Model> {
        match (self.alpha, self.jet) {
            (Some(alpha), None) => Model::pontryagin(self.beta, alpha),
            (None, Some([a1, a2, a3])) => Model::from_jet(self.beta, TorqueJet::new(a1, a2, a3)),
            (Some(_), Some(_)) => {
                Err(Error::InvalidArgument("descriptor must give exactly one of alpha, jet; got both".into()))
            }
            (None, None) => {
                Err(Error::InvalidArgument("descriptor must give exactly one of alpha, jet; got neither".into()))
            }
        }
    }
}
