//! Hyperbolic stability of the governor equilibrium.
//!
//! Three equivalent views of the same test: the Routh–Hurwitz conditions on
//! the characteristic cubic, the friction threshold for a general governor
//! design, and Vyshnegradskii's non-uniformity product.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg3::CubicPoly;
use crate::model::Model;

/// Default half-width of the Critical band on margin quantities.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    AsymptoticallyStable,
    Unstable,
    Critical,
}

impl Stability {
    pub fn label(&self) -> &'static str {
        match self {
            Stability::AsymptoticallyStable => "Stable",
            Stability::Unstable => "Unstable",
            Stability::Critical => "Critical",
        }
    }
}

/// A classification together with the signed margin it was decided on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub stability: Stability,
    /// `p₁p₂ − p₀p₃` for cubic tests, otherwise the signed gap to the threshold.
    pub margin: f64,
}

impl Verdict {
    fn from_gap(gap: f64, tol: f64) -> Self {
        let stability = if gap.abs() <= tol {
            Stability::Critical
        } else if gap > 0.0 {
            Stability::AsymptoticallyStable
        } else {
            Stability::Unstable
        };
        Verdict { stability, margin: gap }
    }
}

/// Routh–Hurwitz test for a cubic with `p₀ > 0`.
pub fn routh_hurwitz(c: &CubicPoly, tol: f64) -> Verdict {
    let margin = c.hurwitz_margin();
    let tested = [c.p1, c.p2, c.p3, margin];
    let stability = if tested.iter().any(|v| v.abs() <= tol) {
        Stability::Critical
    } else if tested.iter().all(|&v| v > tol) {
        Stability::AsymptoticallyStable
    } else {
        Stability::Unstable
    };
    Verdict { stability, margin }
}

/// Local data of a general governor at its equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralJet {
    /// Friction derivative `h'(0)`.
    pub hprime0: f64,
    /// Ball mass `m`.
    pub m: f64,
    /// Flywheel inertia `I`.
    pub inertia: f64,
    /// Transmission value `s(Ω₀)`.
    pub s0: f64,
    /// Transmission slope `s'(Ω₀)`.
    pub sprime0: f64,
    /// Torque slope `M'(φ₀)`.
    pub mprime0: f64,
    /// Equilibrium arm angle `φ₀`.
    pub phi0: f64,
}

impl GeneralJet {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.hprime0, self.m, self.inertia, self.s0, self.sprime0, self.mprime0, self.phi0];
        if !finite.iter().all(|v| v.is_finite()) {
            return Err(domain("general jet entries must be finite"));
        }
        if self.hprime0 < 0.0 {
            return Err(domain(format!("h'(0) must be non-negative, got {}", self.hprime0)));
        }
        for (name, v) in [("m", self.m), ("I", self.inertia), ("s(Omega0)", self.s0), ("s'(Omega0)", self.sprime0)] {
            if v <= 0.0 {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.mprime0 >= 0.0 {
            return Err(domain(format!("M'(phi0) must be negative, got {}", self.mprime0)));
        }
        if !(self.phi0 > 0.0 && self.phi0 < FRAC_PI_2) {
            return Err(domain(format!("phi0 must lie in (0, pi/2), got {}", self.phi0)));
        }
        Ok(())
    }

    /// Friction level `−(2m/I)(s'/s) M'(φ₀) cot φ₀` separating stable from unstable.
    pub fn friction_threshold(&self) -> f64 {
        -2.0 * self.m / self.inertia * (self.sprime0 / self.s0) * self.mprime0 / self.phi0.tan()
    }

    /// Monic characteristic cubic of the Jacobian at equilibrium for a given `g/l`.
    pub fn characteristic_cubic(&self, g_over_l: f64) -> CubicPoly {
        let (sin, cos) = self.phi0.sin_cos();
        CubicPoly::new(
            1.0,
            self.hprime0 / self.m,
            g_over_l * sin * sin / cos,
            -2.0 * g_over_l * self.mprime0 * self.sprime0 * sin / (self.inertia * self.s0),
        )
    }
}

/// Stability of a general governor from its friction margin `h'(0) − threshold`.
///
/// `h'(0) = 0` lands on the Unstable side: the cubic then has `p₁ = 0`.
pub fn classify_general(j: &GeneralJet, tol: f64) -> Result<Verdict> {
    j.validate()?;
    Ok(Verdict::from_gap(j.hprime0 - j.friction_threshold(), tol))
}

/// Engine non-uniformity `η = |dΩ₀/dF| = −s(Ω₀) tan φ₀ / (2 M'(φ₀) s'(Ω₀))`.
pub fn nonuniformity(j: &GeneralJet) -> Result<f64> {
    j.validate()?;
    Ok(-j.s0 * j.phi0.tan() / (2.0 * j.mprime0 * j.sprime0))
}

/// Vyshnegradskii product `h'(0) I η / m`; the equilibrium is stable iff it exceeds one.
pub fn vyshnegradskii_product(j: &GeneralJet) -> Result<f64> {
    Ok(j.hprime0 * j.inertia * nonuniformity(j)? / j.m)
}

/// `ε_c = −2β T'(x₀) / ω₀`.
pub fn epsilon_critical(model: &Model) -> Result<f64> {
    let a1 = model.jet().a1;
    if a1 >= 0.0 {
        return Err(domain(format!("T'(x0) must be negative, got {a1}")));
    }
    Ok(-2.0 * model.beta() * a1 / model.omega0())
}

/// `ε_c = 2αβ^{3/2}` for the classical torque.
pub fn epsilon_critical_pontryagin(beta: f64, alpha: f64) -> f64 {
    2.0 * alpha * beta.powf(1.5)
}

/// Stability of the dimensionless model at damping `eps`; margin is `ε − ε_c`.
pub fn classify_dimensionless(model: &Model, eps: f64, tol: f64) -> Result<Verdict> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(domain(format!("eps must be positive, got {eps}")));
    }
    Ok(Verdict::from_gap(eps - epsilon_critical(model)?, tol))
}
