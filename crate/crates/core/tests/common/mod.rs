//! Closed-form oracles for the Hopf computations, written out independently of
//! the library's bilinear/trilinear forms and linear solves.

#![allow(dead_code)]

use num_complex::Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// β, jet and the derived ω₀, ε_c at a critical point.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub b: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub w: f64,
    pub ec: f64,
}

impl Point {
    pub fn new(b: f64, a1: f64, a2: f64, a3: f64) -> Self {
        let w = ((1.0 - b * b) / b).sqrt();
        Self { b, a1, a2, a3, w, ec: -2.0 * b * a1 / w }
    }

    pub fn pontryagin(b: f64, alpha: f64) -> Self {
        let s = (1.0 - b * b).sqrt();
        Self::new(b, -alpha * s, -alpha * b, alpha * s)
    }
}

pub fn b_qq(p: &Point) -> [Complex64; 3] {
    let Point { b, a2, w, ec, .. } = *p;
    let second = (Complex64::new(b * w * (ec * ec + 6.0 * b), 0.0) - I * 4.0 * ec * (2.0 * b * b - 1.0)) / (2.0 * b.powf(1.5));
    [Complex64::new(0.0, 0.0), second, Complex64::new(-a2, 0.0)]
}

pub fn b_qqbar(p: &Point) -> [Complex64; 3] {
    let Point { b, a2, w, ec, .. } = *p;
    [0.0.into(), (w * (ec * ec - 6.0 * b) / (2.0 * b.sqrt())).into(), a2.into()]
}

pub fn c_qqqbar(p: &Point) -> [Complex64; 3] {
    let Point { b, a3, w, ec, .. } = *p;
    let second = Complex64::new(-8.0 * b * b * ec * w, b * (14.0 * b * b - 8.0) - ec * ec * (2.0 * b * b - 1.0)) / (2.0 * b * b);
    [0.0.into(), second, -I * a3]
}

pub fn b_q_h11(p: &Point) -> [Complex64; 3] {
    let Point { b, a1, a2, w, ec, .. } = *p;
    let first = (6.0 * b - ec * ec) * (I * 2.0 - I * 4.0 * b * b + b * ec * w) * a1;
    let second = 2.0 * b.sqrt() * (I * 2.0 * (1.0 + b * b) * w + ec * (-2.0 + b * (4.0 * b + w * w))) * a2;
    [0.0.into(), (first - second) / (4.0 * b * b * a1), I * a2 * a2 / a1]
}

/// `Re⟨p, C(q,q,q̄)⟩`.
pub fn re_p_c(p: &Point) -> f64 {
    let Point { b, a3, w, ec, .. } = *p;
    (ec * (8.0 * b - 14.0 * b.powi(3) - ec * ec + 2.0 * b * b * (ec * ec - 4.0 * w * w)) - 4.0 * b.powi(3) * w * a3)
        / (4.0 * b * b * (w * w + ec * ec))
}

/// `Re⟨p, 2B(q,h₁₁)⟩`.
pub fn re_p_2b_q_h11(p: &Point) -> f64 {
    let Point { b, a1, a2, w, ec, .. } = *p;
    (ec * (6.0 * b - ec * ec) * (-2.0 + 4.0 * b * b + b * w * w) * a1
        + 2.0 * b.sqrt() * w * a2 * (ec * (4.0 - 2.0 * b * b - b * w * w) + 4.0 * b.powf(2.5) * a2))
        / (4.0 * b * b * (w * w + ec * ec) * a1)
}

/// Which transcription of `Re⟨p, B(q̄,h₂₀)⟩` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theta {
    /// With the three coefficient corrections that make it consistent.
    Corrected,
    /// `2(1−β²)`, `3ω₀³` and `4ε_cω₀²` left as in the display.
    Uncorrected,
}

/// `Re⟨p, B(q̄,h₂₀)⟩ = ϑ / (8β³(ω₀²+ε_c²)(4ε_c²ω₀² + 9ω₀⁴ + βa₁(4ε_cω₀ + βa₁)))`.
pub fn re_p_b_qbar_h20(p: &Point, variant: Theta) -> f64 {
    let Point { b, a1, a2, w, ec, .. } = *p;
    let fixed = variant == Theta::Corrected;
    let k = if fixed { 1.0 - 2.0 * b * b } else { 1.0 - b * b };
    let wpow = if fixed { w * w } else { w.powi(3) };
    let ec_den = if fixed { ec * ec } else { ec };
    let (b2, e2, w2) = (b * b, ec * ec, w * w);

    let theta = 4.0 * (2.0 * b2 - 1.0) * ec.powi(3) * (10.0 + b * (e2 - 26.0 * b)) * w2
        + b * (a1
            * (2.0 * k * e2 * (b * (42.0 * b + e2) - 24.0) * w
                - b * (36.0 * b * (3.0 * b2 - 1.0) + 6.0 * (1.0 + 4.0 * b2) * e2 + 5.0 * b * e2 * e2) * w.powi(3)
                - b * ec * (2.0 * (2.0 * b2 - 1.0) * (b * (2.0 * b + e2) - 4.0) + b2 * (6.0 * b + e2) * w2) * a1)
            + 2.0 * b.powf(1.5)
                * w
                * (18.0 * (1.0 - 5.0 * b2) * w.powi(3) + e2 * w * (38.0 - 5.0 * b * (8.0 * b + 3.0 * wpow))
                    + b * ec * (4.0 + 10.0 * b2 - 3.0 * b * w2) * a1)
                * a2
            + 8.0 * b.powi(4) * w * (5.0 * ec * w + b * a1) * a2 * a2)
        - 6.0 * b * ec * w.powi(4) * (6.0 * b * (1.0 + 3.0 * b2) + (7.0 * b2 - 1.0) * e2);
    let den = 8.0 * b.powi(3) * (w2 + e2) * (4.0 * ec_den * w2 + 9.0 * w2 * w2 + b * a1 * (4.0 * ec * w + b * a1));
    theta / den
}

/// The 45-point acceptance grid.
pub fn grid45() -> Vec<(f64, f64)> {
    let betas = (1..=9).map(|i| i as f64 / 10.0);
    betas.flat_map(|b| [0.25, 0.5, 1.0, 2.0, 4.0].into_iter().map(move |a| (b, a))).collect()
}

pub fn cmax(u: &[Complex64; 3], v: &[Complex64; 3]) -> f64 {
    (0..3).map(|k| (u[k] - v[k]).norm()).fold(0.0, f64::max)
}
