//! Hopf bifurcation on the critical surface `ε = ε_c`.
//!
//! At the critical damping the Jacobian at the equilibrium is
//!
//! ```text
//!     |  0     1     0   |
//! A = | −ω₀²  −ε_c  2βω₀ |      eigenvalues −ε_c, ±iω₀
//!     |  a₁    0     0   |
//! ```
//!
//! The first Lyapunov coefficient is computed two ways: by the projection
//! method on the center manifold (solving for `h₁₁`, `h₂₀` and projecting the
//! cubic resonant term onto the adjoint eigenvector), and by closed forms in
//! the equilibrium parameter and the torque jet.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg3::{self, char_poly, cubic_roots, csolve, inner, CMat3, CVec3, Mat3};
use crate::model::{Model, TorqueJet};
use crate::stability::epsilon_critical;

/// `|l₁|` at or below this is reported as degenerate.
pub const DEGENERATE_L1: f64 = 1e-10;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Second and third order Taylor data of a vector field at an equilibrium.
pub trait LocalForms {
    fn linear(&self) -> Mat3;
    fn bilinear(&self, x: &CVec3, y: &CVec3) -> CVec3;
    fn trilinear(&self, x: &CVec3, y: &CVec3, z: &CVec3) -> CVec3;
}

/// The equilibrium of a model on its critical surface, with the quantities
/// every Hopf computation needs precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfPoint {
    pub beta: f64,
    pub jet: TorqueJet,
    pub omega0: f64,
    pub eps_c: f64,
}

impl HopfPoint {
    pub fn new(model: &Model) -> Result<Self> {
        Ok(Self { beta: model.beta(), jet: model.jet(), omega0: model.omega0(), eps_c: epsilon_critical(model)? })
    }
}

impl LocalForms for HopfPoint {
    fn linear(&self) -> Mat3 {
        jacobian_with_eps(self.beta, self.omega0, self.jet.a1, self.eps_c)
    }

    fn bilinear(&self, x: &CVec3, y: &CVec3) -> CVec3 {
        let b = self.beta;
        let sb = b.sqrt();
        let w = self.omega0;
        let second = -3.0 * w * sb * x[0] * y[0]
            + 2.0 * w * b * sb * x[2] * y[2]
            + 2.0 * (2.0 * b * b - 1.0) / sb * (x[0] * y[2] + x[2] * y[0]);
        [cr(0.0), second, self.jet.a2 * x[0] * y[0]]
    }

    fn trilinear(&self, x: &CVec3, y: &CVec3, z: &CVec3) -> CVec3 {
        let b = self.beta;
        let w = self.omega0;
        let second = (4.0 - 7.0 * b * b) / b * x[0] * y[0] * z[0]
            - 8.0 * w * b * (x[0] * y[0] * z[2] + x[0] * y[2] * z[0] + x[2] * y[0] * z[0])
            + 2.0 * (2.0 * b * b - 1.0) * (x[0] * y[2] * z[2] + x[2] * y[0] * z[2] + x[2] * y[2] * z[0]);
        [cr(0.0), second, self.jet.a3 * x[0] * y[0] * z[0]]
    }
}

fn jacobian_with_eps(beta: f64, omega0: f64, a1: f64, eps: f64) -> Mat3 {
    Mat3([[0.0, 1.0, 0.0], [-omega0 * omega0, -eps, 2.0 * beta * omega0], [a1, 0.0, 0.0]])
}

/// Jacobian at the equilibrium for an arbitrary damping `eps`.
pub fn jacobian_at(model: &Model, eps: f64) -> Mat3 {
    jacobian_with_eps(model.beta(), model.omega0(), model.jet().a1, eps)
}

/// Jacobian at the equilibrium on the critical surface.
pub fn jacobian_at_hopf(model: &Model) -> Result<Mat3> {
    Ok(HopfPoint::new(model)?.linear())
}

pub fn bilinear_b(model: &Model, x: &CVec3, y: &CVec3) -> Result<CVec3> {
    Ok(HopfPoint::new(model)?.bilinear(x, y))
}

pub fn trilinear_c(model: &Model, x: &CVec3, y: &CVec3, z: &CVec3) -> Result<CVec3> {
    Ok(HopfPoint::new(model)?.trilinear(x, y, z))
}

/// Critical eigendata with `Aq = iω₀q`, `Aᵀp = −iω₀p`, `⟨p, q⟩ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    pub omega0: f64,
    pub lambda1: f64,
    pub q: CVec3,
    pub p: CVec3,
}

impl EigenData {
    /// Largest of the two eigen-equation residuals and the normalization defect.
    pub fn residuals(&self, a: &Mat3) -> (f64, f64, f64) {
        let iw = I * self.omega0;
        let rq = linalg3::norm_inf(&linalg3::sub(&a.mul_cvec(&self.q), &linalg3::scale(iw, &self.q)));
        let rp = linalg3::norm_inf(&linalg3::add(&a.transpose().mul_cvec(&self.p), &linalg3::scale(iw, &self.p)));
        (rq, rp, (inner(&self.p, &self.q) - 1.0).norm())
    }
}

/// Closed-form critical eigenvectors
/// `q = (−i, ω₀, ε_c/2β)`, `p = (−i/2, (ω₀ − iε_c)/(2D), β(ε_c + iω₀)/D)` with `D = ω₀² + ε_c²`.
pub fn hopf_eigenvectors(model: &Model) -> Result<EigenData> {
    Ok(eigenvectors_at(&HopfPoint::new(model)?))
}

pub fn eigenvectors_at(h: &HopfPoint) -> EigenData {
    let (w, ec, b) = (h.omega0, h.eps_c, h.beta);
    let d = w * w + ec * ec;
    EigenData {
        omega0: w,
        lambda1: -ec,
        q: [-I, cr(w), cr(ec / (2.0 * b))],
        p: [-I * 0.5, Complex64::new(w, -ec) / (2.0 * d), Complex64::new(ec, w) * (b / d)],
    }
}

/// Critical eigenvectors from null spaces of `iω₀I − A` and `−iω₀I − Aᵀ`,
/// with `q₁ = −i` and `p` rescaled to `⟨p, q⟩ = 1`.
pub fn eigenvectors_by_deflation(a: &Mat3, omega0: f64) -> Result<EigenData> {
    let iw = I * omega0;
    let q = linalg3::null_vector(&CMat3::shifted(iw, a), 0, -I)?;
    let p = linalg3::null_vector(&CMat3::shifted(-iw, &a.transpose()), 0, cr(1.0))?;
    let s = inner(&p, &q);
    let p = linalg3::scale(cr(1.0) / s.conj(), &p);
    let lambda1 = a.trace();
    Ok(EigenData { omega0, lambda1, q, p })
}

/// Output of the projection-method computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericLyapunov {
    pub l1: f64,
    pub g21: Complex64,
    pub h11: CVec3,
    pub h20: CVec3,
    /// `Re⟨p, C(q,q,q̄)⟩`, `Re⟨p, 2B(q,h₁₁)⟩`, `Re⟨p, B(q̄,h₂₀)⟩`.
    pub real_parts: [f64; 3],
    /// `|⟨v, r − G₂₁q⟩| / ‖v‖∞` with `v` a left null vector of `iω₀I − A` and `r`
    /// the right side of the `h₂₁` equation.
    pub h21_residual: f64,
}

/// First Lyapunov coefficient by center-manifold projection.
pub fn lyapunov_numeric<F: LocalForms>(forms: &F, eigen: &EigenData) -> Result<NumericLyapunov> {
    let a = forms.linear();
    let (q, p) = (&eigen.q, &eigen.p);
    let qb = linalg3::conj(q);
    let w = eigen.omega0;

    let h11 = csolve(&a.to_complex(), &forms.bilinear(q, &qb))?.map(|z| -z);
    let h20 = csolve(&CMat3::shifted(I * (2.0 * w), &a), &forms.bilinear(q, q))?;

    let cubic = forms.trilinear(q, q, &qb);
    let b_qbar_h20 = forms.bilinear(&qb, &h20);
    let b_q_h11 = linalg3::scale(cr(2.0), &forms.bilinear(q, &h11));
    let rhs = linalg3::add(&linalg3::add(&cubic, &b_qbar_h20), &b_q_h11);
    let g21 = inner(p, &rhs);

    // Fredholm check with an independently computed left null vector.
    let left = linalg3::null_vector(&CMat3::shifted(I * w, &a).conj_transpose(), 0, cr(1.0))?;
    let defect = linalg3::sub(&rhs, &linalg3::scale(g21, q));
    let h21_residual = inner(&left, &defect).norm() / linalg3::norm_inf(&left);

    Ok(NumericLyapunov {
        l1: g21.re / (2.0 * w),
        g21,
        h11,
        h20,
        real_parts: [inner(p, &cubic).re, inner(p, &b_q_h11).re, inner(p, &b_qbar_h20).re],
        h21_residual,
    })
}

/// Numerator polynomial `R(β, a₁, a₂, a₃)` of the general closed form.
pub fn r_polynomial(beta: f64, a1: f64, a2: f64, a3: f64) -> f64 {
    let b = beta;
    let b2 = b * b;
    let u = 1.0 - b2;
    let b4 = b2 * b2;
    b2 * (2.0 * b.powi(7) * a1.powi(6)
        + b.powi(3) * a1.powi(4) * (2.0 - 3.0 * b2 + 5.0 * b4)
        + 4.0 * b * u.powi(3) * a2 * a2
        + b * u * (a1 * a1 * (9.0 * u * u + 2.0 * b4 * a2 * a2) + 2.0 * a3 * (-b4 * a1.powi(3) - u * u * a1))
        + a2 * u.sqrt() * (-b4 * a1.powi(3) * (1.0 + 5.0 * b2) - a1 * u * u * (5.0 + 3.0 * b2)))
}

/// `(1−β²)⁴ + 5β⁴(1−β²)²a₁² + 4β⁸a₁⁴`, positive for `a₁ ≠ 0`.
pub fn r_denominator(beta: f64, a1: f64) -> f64 {
    let u = 1.0 - beta * beta;
    let b4 = beta.powi(4);
    u.powi(4) + 5.0 * b4 * u * u * a1 * a1 + 4.0 * b4 * b4 * a1.powi(4)
}

/// Closed-form `l₁` for an arbitrary torque jet: `l₁ = −R / (2 ε_c ω₀ · den)`.
///
/// Since `ε_c ω₀ = −2βa₁`, this is `R / (4βa₁ · den)`.
pub fn lyapunov_closed_general(beta: f64, a1: f64, a2: f64, a3: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(domain(format!("beta must lie in (0, 1), got {beta}")));
    }
    if !(a1 < 0.0) {
        return Err(domain(format!("a1 must be negative, got {a1}")));
    }
    Ok(r_polynomial(beta, a1, a2, a3) / (4.0 * beta * a1 * r_denominator(beta, a1)))
}

/// Closed-form `l₁` for `T(x) = α cos x`.
pub fn lyapunov_closed_pontryagin(beta: f64, alpha: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(domain(format!("beta must lie in (0, 1), got {beta}")));
    }
    if !(alpha > 0.0) {
        return Err(domain(format!("alpha must be positive, got {alpha}")));
    }
    let b2 = beta * beta;
    let a2 = alpha * alpha;
    let num = alpha * b2 * (1.0 - b2).sqrt() * g_discriminant(beta, alpha);
    let den = 2.0 * (1.0 - b2 + a2 * b2 * b2) * (1.0 - b2 + 4.0 * a2 * b2 * b2);
    Ok(-num / den)
}

/// `g(β, α) = 3 + (α² − 5)β² + α⁴β⁶`; `l₁` has the opposite sign.
pub fn g_discriminant(beta: f64, alpha: f64) -> f64 {
    let b2 = beta * beta;
    let a2 = alpha * alpha;
    3.0 + (a2 - 5.0) * b2 + a2 * a2 * b2 * b2 * b2
}

/// Smallest `β` at which `g(β, α) = 0` has a positive root `α`: `√(3/5)`.
pub fn boundary_beta_min() -> f64 {
    (0.6f64).sqrt()
}

/// The level curve `g = 0` as a graph `α = h(β)` for `β ∈ (√(3/5), 1)`.
pub fn hopf_boundary(beta: f64) -> Result<f64> {
    if !(beta > boundary_beta_min() && beta < 1.0) {
        return Err(domain(format!("beta must lie in (sqrt(3/5), 1), got {beta}")));
    }
    let b2 = beta * beta;
    let inner = (20.0 * b2 * b2 - 12.0 * b2 + 1.0).sqrt() - 1.0;
    Ok(inner.sqrt() / (std::f64::consts::SQRT_2 * b2))
}

/// `γ'(ε_c) = −ω₀² / (2(ω₀² + ε_c²))`, the crossing speed of the critical pair.
pub fn transversality(model: &Model) -> Result<f64> {
    let h = HopfPoint::new(model)?;
    let w2 = h.omega0 * h.omega0;
    Ok(-0.5 * w2 / (w2 + h.eps_c * h.eps_c))
}

/// `γ'(ε_c) = Re⟨p, (dA/dε) q⟩`, with `dA/dε` the matrix whose only entry is −1 at (2, 2).
pub fn transversality_projection(eigen: &EigenData) -> f64 {
    let dq = [cr(0.0), -eigen.q[1], cr(0.0)];
    inner(&eigen.p, &dq).re
}

/// Real part of the complex eigenvalue pair of the Jacobian at damping `eps`.
///
/// Fails when the spectrum at `eps` has no complex pair.
pub fn critical_pair_real_part(model: &Model, eps: f64) -> Result<f64> {
    let roots = cubic_roots(&char_poly(&jacobian_at(model, eps)));
    roots
        .iter()
        .find(|z| z.im > 0.0)
        .map(|z| z.re)
        .ok_or_else(|| Error::InvalidArgument(format!("no complex eigenvalue pair at eps = {eps}")))
}

/// `K₁(β) = (1 + 5β²) / (2β√(1−β²))`.
pub fn k1(beta: f64) -> f64 {
    (1.0 + 5.0 * beta * beta) / (2.0 * beta * (1.0 - beta * beta).sqrt())
}

/// `K₂(β) = (5 + 3β²) / (2β√(1−β²))`.
pub fn k2(beta: f64) -> f64 {
    (5.0 + 3.0 * beta * beta) / (2.0 * beta * (1.0 - beta * beta).sqrt())
}

/// Whether `(a₂, a₃)` lies in the certified-supercritical half plane `a₃ + K₂(β)a₂ > 0`.
pub fn in_s_beta(beta: f64, a2: f64, a3: f64) -> bool {
    a3 + k2(beta) * a2 > 0.0
}

/// Component of the critical surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// `l₁ < 0`: stable cycles for `ε` slightly below `ε_c`.
    S,
    /// `l₁ > 0`: unstable cycles for `ε` slightly above `ε_c`.
    U,
    /// `l₁ ≈ 0`.
    Degenerate,
}

impl Region {
    pub fn code(&self) -> &'static str {
        match self {
            Region::S => "S",
            Region::U => "U",
            Region::Degenerate => "D",
        }
    }

    fn from_l1(l1: f64) -> Self {
        if l1.abs() <= DEGENERATE_L1 {
            Region::Degenerate
        } else if l1 < 0.0 {
            Region::S
        } else {
            Region::U
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub region: Region,
    /// True when the verdict follows from an exact sign criterion rather than a
    /// floating-point evaluation of `l₁` alone.
    pub certified: bool,
}

/// S/U classification of the model's critical point.
///
/// Classical torque: by the sign of the closed-form `l₁` (equivalently `−g`).
/// Jet models: certified S inside `S_β`; otherwise the uncertified sign of the
/// general closed form.
pub fn classify_region(model: &Model) -> Result<RegionVerdict> {
    let beta = model.beta();
    if let Some(alpha) = model.pontryagin_alpha() {
        let region = Region::from_l1(lyapunov_closed_pontryagin(beta, alpha)?);
        return Ok(RegionVerdict { region, certified: true });
    }
    let jet = model.jet();
    if in_s_beta(beta, jet.a2, jet.a3) {
        return Ok(RegionVerdict { region: Region::S, certified: true });
    }
    let l1 = lyapunov_closed_general(beta, jet.a1, jet.a2, jet.a3)?;
    Ok(RegionVerdict { region: Region::from_l1(l1), certified: false })
}

/// Closed-form `l₁` appropriate to the model kind.
pub fn lyapunov_closed(model: &Model) -> Result<f64> {
    match model.pontryagin_alpha() {
        Some(alpha) => lyapunov_closed_pontryagin(model.beta(), alpha),
        None => {
            let j = model.jet();
            lyapunov_closed_general(model.beta(), j.a1, j.a2, j.a3)
        }
    }
}

/// Everything known about the model's Hopf point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfReport {
    pub eps_c: f64,
    pub omega0: f64,
    pub eigen: EigenData,
    pub l1_closed: f64,
    pub l1_numeric: f64,
    pub gamma_prime: f64,
    pub region: Region,
    pub certified: bool,
    /// `g(β, α)`; classical torque only.
    pub g_value: Option<f64>,
    pub h21_residual: f64,
}

pub fn analyze(model: &Model) -> Result<HopfReport> {
    let point = HopfPoint::new(model)?;
    let eigen = eigenvectors_at(&point);
    let numeric = lyapunov_numeric(&point, &eigen)?;
    let verdict = classify_region(model)?;
    Ok(HopfReport {
        eps_c: point.eps_c,
        omega0: point.omega0,
        eigen,
        l1_closed: lyapunov_closed(model)?,
        l1_numeric: numeric.l1,
        gamma_prime: transversality(model)?,
        region: verdict.region,
        certified: verdict.certified,
        g_value: model.pontryagin_alpha().map(|a| g_discriminant(model.beta(), a)),
        h21_residual: numeric.h21_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L1_REF: f64 = -0.268_551_146_846_616_7;

    fn reference() -> Model {
        Model::pontryagin(0.5, 1.0).unwrap()
    }

    #[test]
    fn jacobian_entries() {
        let a = jacobian_at_hopf(&reference()).unwrap();
        let want = [[0.0, 1.0, 0.0], [-1.5, -0.707_106_78, 1.224_744_87], [-0.866_025_40, 0.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((a.0[i][j] - want[i][j]).abs() < 1e-8, "({i},{j})");
            }
        }
        assert!((a.trace() + 0.707_106_781_186_547_6).abs() < 1e-15);
        let roots = cubic_roots(&char_poly(&a));
        assert!((roots[0] - cr(-0.707_106_781_186_547_6)).norm() < 1e-9);
        assert!((roots[2] - Complex64::new(0.0, 1.5f64.sqrt())).norm() < 1e-9);
    }

    #[test]
    fn eigenvectors_satisfy_definitions() {
        for &(beta, alpha) in &[(0.5, 1.0), (0.1, 0.25), (0.9, 4.0), (0.3, 2.0)] {
            let m = Model::pontryagin(beta, alpha).unwrap();
            let e = hopf_eigenvectors(&m).unwrap();
            let (rq, rp, rn) = e.residuals(&jacobian_at_hopf(&m).unwrap());
            assert!(rq < 1e-10 && rp < 1e-10 && rn < 1e-12, "{rq} {rp} {rn}");
        }
        let e = hopf_eigenvectors(&reference()).unwrap();
        assert_eq!(e.q[0], -I);
        assert!((e.q[1].re - 1.224_744_871_391_589).abs() < 1e-12);
        assert!((e.q[2].re - 0.707_106_781_186_547_6).abs() < 1e-12);
    }

    #[test]
    fn deflation_reproduces_closed_form_eigenvectors() {
        for &(beta, alpha) in &[(0.5, 1.0), (0.2, 0.5), (0.85, 3.0)] {
            let m = Model::pontryagin(beta, alpha).unwrap();
            let closed = hopf_eigenvectors(&m).unwrap();
            let deflated = eigenvectors_by_deflation(&jacobian_at_hopf(&m).unwrap(), closed.omega0).unwrap();
            for k in 0..3 {
                assert!((closed.q[k] - deflated.q[k]).norm() < 1e-12);
                assert!((closed.p[k] - deflated.p[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn bilinear_reference_values() {
        let m = reference();
        let e = hopf_eigenvectors(&m).unwrap();
        let b = bilinear_b(&m, &e.q, &linalg3::conj(&e.q)).unwrap();
        assert_eq!(b[0], cr(0.0));
        assert!((b[1] - cr(-2.165_063_509_461_097)).norm() < 1e-12);
        assert!((b[2] - cr(-0.5)).norm() < 1e-15);
        let e2 = [cr(0.0), cr(1.0), cr(0.0)];
        let y = [Complex64::new(0.3, -1.0), cr(2.0), Complex64::new(-0.7, 0.2)];
        assert!(linalg3::norm_inf(&bilinear_b(&m, &e2, &y).unwrap()) == 0.0);
        assert!(linalg3::norm_inf(&trilinear_c(&m, &e2, &y, &y).unwrap()) == 0.0);
    }

    #[test]
    fn cubic_term_third_component() {
        let m = reference();
        let e = hopf_eigenvectors(&m).unwrap();
        let c = trilinear_c(&m, &e.q, &e.q, &linalg3::conj(&e.q)).unwrap();
        assert!((c[2] - (-I * m.jet().a3)).norm() < 1e-15);
    }

    #[test]
    fn reference_l1_all_paths() {
        let m = reference();
        let closed = lyapunov_closed_pontryagin(0.5, 1.0).unwrap();
        assert!((closed - L1_REF).abs() < 1e-12);
        let j = m.jet();
        let general = lyapunov_closed_general(0.5, j.a1, j.a2, j.a3).unwrap();
        assert!((general - L1_REF).abs() < 1e-12);
        let point = HopfPoint::new(&m).unwrap();
        let numeric = lyapunov_numeric(&point, &eigenvectors_at(&point)).unwrap();
        assert!((numeric.l1 - L1_REF).abs() < 1e-12);
        assert!(numeric.h21_residual < 1e-8);
    }

    #[test]
    fn general_closed_form_signs() {
        for &beta in &[0.1, 0.5, 0.9] {
            for &a1 in &[-0.1, -1.0, -5.0] {
                assert!(lyapunov_closed_general(beta, a1, 0.0, 0.0).unwrap() < 0.0);
                // inside S_β
                let a2 = 0.7;
                let a3 = -k2(beta) * a2 + 0.01;
                assert!(lyapunov_closed_general(beta, a1, a2, a3).unwrap() < 0.0);
            }
        }
        assert!(lyapunov_closed_general(0.5, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn pontryagin_sign_and_g() {
        assert!(lyapunov_closed_pontryagin(0.9, 0.5).unwrap() > 0.0);
        assert!((g_discriminant(0.9, 0.5) + 0.814_284_937_5).abs() < 1e-12);
        assert!((g_discriminant(0.5, 1.0) - 2.015_625).abs() < 1e-15);
        let beta = 0.9;
        let alpha = hopf_boundary(beta).unwrap();
        assert!(lyapunov_closed_pontryagin(beta, alpha).unwrap().abs() < 1e-10);
    }

    #[test]
    fn boundary_curve() {
        let h = hopf_boundary(0.9).unwrap();
        assert!((h - 0.914_786_646_520_407).abs() < 1e-12);
        assert!(g_discriminant(0.9, h).abs() < 1e-10);
        assert!(hopf_boundary(0.7).is_err());
        assert!(hopf_boundary(1.0).is_err());
        let lo = boundary_beta_min();
        for i in 1..=1000 {
            let beta = lo + (1.0 - lo) * i as f64 / 1001.0;
            assert!(hopf_boundary(beta).unwrap() < 1.0);
        }
        // α → 0 limit of g vanishes at √(3/5)
        assert!(g_discriminant(lo, 0.0).abs() < 1e-15);
    }

    #[test]
    fn transversality_values() {
        let m = reference();
        assert!((transversality(&m).unwrap() + 0.375).abs() < 1e-15);
        let e = hopf_eigenvectors(&m).unwrap();
        assert!((transversality_projection(&e) + 0.375).abs() < 1e-15);
        for &(beta, alpha) in &[(0.05, 0.1), (0.5, 10.0), (0.99, 1.0)] {
            let g = transversality(&Model::pontryagin(beta, alpha).unwrap()).unwrap();
            assert!(g > -0.5 && g < 0.0);
        }
    }

    #[test]
    fn transversality_matches_eigenvalue_tracking() {
        let m = reference();
        let ec = epsilon_critical(&m).unwrap();
        let h = 1e-4;
        let fd = (critical_pair_real_part(&m, ec + h).unwrap() - critical_pair_real_part(&m, ec - h).unwrap()) / (2.0 * h);
        assert!((fd - transversality(&m).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn region_classification() {
        let v = classify_region(&reference()).unwrap();
        assert_eq!(v.region, Region::S);
        let v = classify_region(&Model::pontryagin(0.9, 0.5).unwrap()).unwrap();
        assert_eq!(v.region, Region::U);
        let beta = 0.9;
        let on_curve = Model::pontryagin(beta, hopf_boundary(beta).unwrap()).unwrap();
        assert_eq!(classify_region(&on_curve).unwrap().region, Region::Degenerate);

        let jet = Model::from_jet(0.5, TorqueJet::new(-0.866, 0.0, 1.0)).unwrap();
        assert_eq!(classify_region(&jet).unwrap(), RegionVerdict { region: Region::S, certified: true });
        assert!((k2(0.5) - 6.639_528_095_680_697).abs() < 1e-12);
        assert!((k1(0.5) - 2.598_076_211_353_316).abs() < 1e-12);

        // Pontryagin jet of a U point sits outside S_β and is classified uncertified
        let j = TorqueJet::pontryagin(0.9, 0.5);
        let v = classify_region(&Model::from_jet(0.9, j).unwrap()).unwrap();
        assert_eq!(v, RegionVerdict { region: Region::U, certified: false });
    }

    #[test]
    fn k2_dominates_k1() {
        for i in 1..1000 {
            let b = i as f64 / 1000.0;
            assert!(k2(b) > k1(b));
        }
    }

    #[test]
    fn report_is_consistent() {
        let r = analyze(&reference()).unwrap();
        assert!((r.l1_closed - r.l1_numeric).abs() < 1e-8);
        assert!(r.gamma_prime < 0.0);
        assert_eq!(r.region, Region::S);
        assert_eq!(r.g_value, Some(2.015_625));
    }
}
