//! Dimension-3 linear algebra: characteristic polynomial, closed-form cubic
//! roots and complex Gaussian elimination.

use std::cmp::Ordering;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CVec3 = [Complex64; 3];

/// Real 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    pub fn to_complex(&self) -> CMat3 {
        let mut out = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = Complex64::new(self.0[i][j], 0.0);
            }
        }
        out
    }

    pub fn mul_cvec(&self, v: &CVec3) -> CVec3 {
        let m = &self.0;
        std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

/// Complex 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat3(pub [[Complex64; 3]; 3]);

impl CMat3 {
    pub fn zero() -> Self {
        CMat3([[Complex64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(s: Complex64) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = s;
        }
        m
    }

    pub fn diag(d: [Complex64; 3]) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    /// `s·I − A`.
    pub fn shifted(s: Complex64, a: &Mat3) -> Self {
        let mut m = a.to_complex();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = -m.0[i][j];
            }
            m.0[i][i] += s;
        }
        m
    }

    pub fn conj_transpose(&self) -> CMat3 {
        let m = &self.0;
        CMat3(std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].conj())))
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Mul<&CVec3> for &CMat3 {
    type Output = CVec3;
    fn mul(self, v: &CVec3) -> CVec3 {
        let m = &self.0;
        std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }
}

/// `⟨u, v⟩ = Σ ūᵢ vᵢ`, conjugate-linear in the first slot.
pub fn inner(u: &CVec3, v: &CVec3) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn conj(v: &CVec3) -> CVec3 {
    v.map(|z| z.conj())
}

pub fn norm_inf(v: &CVec3) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn sub(u: &CVec3, v: &CVec3) -> CVec3 {
    std::array::from_fn(|i| u[i] - v[i])
}

pub fn add(u: &CVec3, v: &CVec3) -> CVec3 {
    std::array::from_fn(|i| u[i] + v[i])
}

pub fn scale(s: Complex64, v: &CVec3) -> CVec3 {
    v.map(|z| s * z)
}

/// Cubic `p₀λ³ + p₁λ² + p₂λ + p₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPoly {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl CubicPoly {
    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self { p0, p1, p2, p3 }
    }

    /// Monic cubic with the given roots.
    pub fn from_roots(r: [Complex64; 3]) -> Self {
        let s1 = r[0] + r[1] + r[2];
        let s2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
        let s3 = r[0] * r[1] * r[2];
        Self::new(1.0, -s1.re, s2.re, -s3.re)
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        ((z * self.p0 + self.p1) * z + self.p2) * z + self.p3
    }

    fn eval_deriv(&self, z: Complex64) -> Complex64 {
        (z * (3.0 * self.p0) + 2.0 * self.p1) * z + self.p2
    }

    /// Largest coefficient magnitude, floored at one.
    pub fn scale(&self) -> f64 {
        self.coefficients().iter().fold(1.0_f64, |m, c| m.max(c.abs()))
    }

    /// Hurwitz margin `p₁p₂ − p₀p₃`.
    pub fn hurwitz_margin(&self) -> f64 {
        self.p1 * self.p2 - self.p0 * self.p3
    }
}

/// Characteristic polynomial `det(λI − A)`, returned monic.
pub fn char_poly(a: &Mat3) -> CubicPoly {
    let m = &a.0;
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    CubicPoly::new(1.0, -a.trace(), minors, -a.det())
}

/// One Newton step, kept only when it lowers the residual.
fn polish(c: &CubicPoly, z: Complex64) -> Complex64 {
    let d = c.eval_deriv(z);
    if d.norm() == 0.0 {
        return z;
    }
    let next = z - c.eval(z) / d;
    if next.is_finite() && c.eval(next).norm() <= c.eval(z).norm() {
        next
    } else {
        z
    }
}

fn polish_real(c: &CubicPoly, x: f64) -> f64 {
    polish(c, Complex64::new(x, 0.0)).re
}

/// The three roots of `c`, sorted by (real part, imaginary part).
///
/// Closed form via the depressed cubic; complex roots come out as exact
/// conjugate pairs. Panics if `p₀ = 0`.
pub fn cubic_roots(c: &CubicPoly) -> [Complex64; 3] {
    assert!(c.p0 != 0.0, "leading coefficient must be non-zero");
    let a = c.p1 / c.p0;
    let b = c.p2 / c.p0;
    let cc = c.p3 / c.p0;
    let monic = CubicPoly::new(1.0, a, b, cc);

    // λ = t − a/3  ⇒  t³ + p t + q = 0
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + cc;
    let disc = q * q / 4.0 + p * p * p / 27.0;

    let mut roots = if disc < 0.0 {
        // three distinct real roots
        let r = (-p / 3.0).sqrt();
        let arg = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        [0.0, 1.0, 2.0].map(|k| {
            let t = 2.0 * r * (phi - k * tau).cos();
            Complex64::new(polish_real(&monic, t - shift), 0.0)
        })
    } else {
        let sq = disc.sqrt();
        let u = -q.signum() * (q.abs() / 2.0 + sq).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        let real = polish_real(&monic, u + v - shift);
        // deflate: λ² + d1 λ + d0
        let d1 = a + real;
        let d0 = b + real * d1;
        let qd = d1 * d1 / 4.0 - d0;
        let mid = -d1 / 2.0;
        let first = Complex64::new(real, 0.0);
        if qd >= 0.0 {
            let s = qd.sqrt();
            // avoid cancellation in the smaller root
            let big = mid - d1.signum() * s;
            let small = if big != 0.0 { d0 / big } else { mid + d1.signum() * s };
            [first, Complex64::new(polish_real(&monic, big), 0.0), Complex64::new(polish_real(&monic, small), 0.0)]
        } else {
            let z = polish(&monic, Complex64::new(mid, (-qd).sqrt()));
            let z = Complex64::new(z.re, z.im.abs());
            [first, z, z.conj()]
        }
    };
    roots.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap_or(Ordering::Equal).then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal)));
    roots
}

/// Solve `M x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with [`Error::Singular`] when `|det M| < 1e-12 · (max |Mᵢⱼ|)³`.
pub fn csolve(m: &CMat3, b: &CVec3) -> Result<CVec3> {
    let scale = m.max_abs();
    let det = m.det().norm();
    if scale == 0.0 || !det.is_finite() || det < 1e-12 * scale.powi(3) {
        return Err(Error::Singular { det });
    }
    let mut a = m.0;
    let mut rhs = *b;
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap_or(Ordering::Equal))
            .unwrap();
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            let t = rhs[col];
            rhs[row] -= f * t;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut s = rhs[row];
        for k in row + 1..3 {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

/// Null vector of a rank-2 matrix, normalized so that component `pin` equals `value`.
///
/// Each row of `m` in turn is replaced by the pin equation `e_pin · x = value`
/// and the resulting system is solved; the candidate with the smallest
/// residual on the original matrix wins.
pub fn null_vector(m: &CMat3, pin: usize, value: Complex64) -> Result<CVec3> {
    let zero = Complex64::new(0.0, 0.0);
    let mut best: Option<(f64, CVec3)> = None;
    let mut last_err = Error::Singular { det: 0.0 };
    for drop in 0..3 {
        let mut sys = *m;
        sys.0[drop] = [zero; 3];
        sys.0[drop][pin] = Complex64::new(1.0, 0.0);
        let mut rhs = [zero; 3];
        rhs[drop] = value;
        match csolve(&sys, &rhs) {
            Ok(x) => {
                let res = norm_inf(&(m * &x));
                if best.as_ref().map_or(true, |(r, _)| res < *r) {
                    best = Some((res, x));
                }
            }
            Err(e) => last_err = e,
        }
    }
    best.map(|(_, x)| x).ok_or(last_err)
}
