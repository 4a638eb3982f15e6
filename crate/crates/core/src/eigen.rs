//! Floating-point Hermitian eigensolver (cyclic complex Jacobi) used for
//! Schur-majorization demonstrations, the `(I + T)^{1/2}` frame
//! construction, and as an independent numeric cross-check. No exact
//! verdict depends on anything here.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MAJORIZATION_TOLERANCE: f64 = 1e-9;
const HERMITIAN_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl FloatMatrix {
    pub fn zeros(n: usize) -> Self {
        FloatMatrix { n, data: vec![Complex64::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::from_fn(rows.len(), |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_exact(a: &Matrix) -> Self {
        Self::from_fn(a.n(), |i, j| to_complex(&a[(i, j)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &FloatMatrix) -> FloatMatrix {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| (0..self.n).map(|k| self[(i, k)] * other[(k, j)]).sum())
    }

    pub fn sub(&self, other: &FloatMatrix) -> FloatMatrix {
        Self::from_fn(self.n, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn diag_real(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)].re).collect()
    }

    fn require_hermitian(&self) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(dev));
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for FloatMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FloatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

pub fn to_complex(z: &GaussianRational) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: FloatMatrix,
    pub rotation_count: usize,
    pub off_diagonal_norm: f64,
}

/// Cyclic Jacobi: each rotation first turns `a_pq` real with a phase on
/// column/row `q`, then annihilates it with a real plane rotation.
pub fn jacobi_eigen(a: &FloatMatrix, tol: f64) -> Result<EigenResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    a.require_hermitian()?;
    let n = a.n;
    let mut m = a.clone();
    let mut v = FloatMatrix::identity(n);
    let mut rotations = 0;
    let mut sweeps = 0;
    while m.off_diagonal_norm() > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: m.off_diagonal_norm() });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                rotations += 1;
                let phase = apq / r;
                // Column q scaled by conj(phase), row q by phase.
                for k in 0..n {
                    m[(k, q)] *= phase.conj();
                    v[(k, q)] *= phase.conj();
                }
                for k in 0..n {
                    m[(q, k)] *= phase;
                }
                let (app, aqq) = (m[(p, p)].re, m[(q, q)].re);
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (x, y) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = x * c - y * s;
                    m[(k, q)] = x * s + y * c;
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = x * c - y * s;
                    v[(k, q)] = x * s + y * c;
                }
                for k in 0..n {
                    let (x, y) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = x * c - y * s;
                    m[(q, k)] = x * s + y * c;
                }
                m[(p, q)] = Complex64::zero();
                m[(q, p)] = Complex64::zero();
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = FloatMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(EigenResult { eigenvalues, eigenvectors, rotation_count: rotations, off_diagonal_norm: m.off_diagonal_norm() })
}

/// Eigenvalues majorize the diagonal: every descending partial sum has
/// slack `≥ −tol` and the totals agree within `tol`.
pub fn schur_majorization_check(a: &FloatMatrix, tol: f64) -> Result<bool> {
    let eig = jacobi_eigen(a, DEFAULT_TOLERANCE.min(tol))?;
    Ok(majorization_slacks(&eig.eigenvalues, &a.diag_real(), tol))
}

fn majorization_slacks(x: &[f64], y: &[f64], tol: f64) -> bool {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| b.total_cmp(a));
    ys.sort_by(|a, b| b.total_cmp(a));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx - sy < -tol {
            return false;
        }
    }
    (sx - sy).abs() <= tol
}

/// PSD square root via the eigendecomposition `A = U diag(λ) U*`.
pub fn psd_sqrt(a: &FloatMatrix, tol: f64) -> Result<FloatMatrix> {
    let eig = jacobi_eigen(a, tol)?;
    if let Some(&min) = eig.eigenvalues.last() {
        if min < -tol {
            return Err(Error::NotPsd(min));
        }
    }
    let u = &eig.eigenvectors;
    let roots: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(FloatMatrix::from_fn(a.n, |i, j| {
        (0..a.n).map(|k| u[(i, k)] * roots[k] * u[(j, k)].conj()).sum()
    }))
}

/// Spectral norm of a Hermitian matrix (largest |eigenvalue|).
pub fn hermitian_spectral_norm(a: &FloatMatrix) -> Result<f64> {
    let eig = jacobi_eigen(a, DEFAULT_TOLERANCE)?;
    Ok(eig.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs())))
}

/// Float version of the frame product inequality: returns
/// `(∏ λ_i, ∏ b_ii)` with `B = V*ΛV`.
pub fn float_frame_product(lambda: &[f64], v: &FloatMatrix) -> (f64, f64) {
    let n = v.n;
    let diag = (0..n).map(|i| (0..n).map(|k| v[(k, i)].norm_sqr() * lambda[k]).sum::<f64>());
    (lambda.iter().product(), diag.product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn diagonal_needs_no_rotations() {
        let r = jacobi_eigen(&FloatMatrix::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]), 1e-10).unwrap();
        assert_eq!(r.eigenvalues, vec![3.0, 2.0, 1.0]);
        assert_eq!(r.rotation_count, 0);
    }

    #[test]
    fn two_by_two_closed_form() {
        let r = jacobi_eigen(&FloatMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]), 1e-10).unwrap();
        assert!(close(r.eigenvalues[0], 3.0, 1e-12) && close(r.eigenvalues[1], 1.0, 1e-12));
        let c = FloatMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => Complex64::new(0.0, 1.0),
            (1, 0) => Complex64::new(0.0, -1.0),
            _ => Complex64::new(2.0, 0.0),
        });
        let r = jacobi_eigen(&c, 1e-10).unwrap();
        assert!(close(r.eigenvalues[0], 3.0, 1e-12) && close(r.eigenvalues[1], 1.0, 1e-12));
    }

    #[test]
    fn eigenvectors_diagonalize() {
        let a = FloatMatrix::from_fn(4, |i, j| {
            if i == j {
                Complex64::new(i as f64 + 1.0, 0.0)
            } else if i < j {
                Complex64::new(0.3 * (i + j) as f64, 0.1 * j as f64)
            } else {
                Complex64::new(0.3 * (i + j) as f64, -0.1 * i as f64)
            }
        });
        let r = jacobi_eigen(&a, 1e-12).unwrap();
        let u = &r.eigenvectors;
        let d = u.adjoint().mul(&a).mul(u);
        for k in 0..4 {
            assert!(close(d[(k, k)].re, r.eigenvalues[k], 1e-9));
        }
        assert!(d.off_diagonal_norm() < 1e-9);
        let trace: f64 = a.diag_real().iter().sum();
        assert!(close(r.eigenvalues.iter().sum(), trace, 4e-10));
    }

    #[test]
    fn rejects_bad_input() {
        let a = FloatMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(jacobi_eigen(&a, 1e-10), Err(Error::NotHermitian(_))));
        assert!(jacobi_eigen(&FloatMatrix::identity(2), 0.0).is_err());
        let neg = FloatMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(psd_sqrt(&neg, 1e-10), Err(Error::NotPsd(_))));
    }

    #[test]
    fn majorization_examples() {
        assert!(schur_majorization_check(&FloatMatrix::from_real_rows(&[&[5.0, 0.0], &[0.0, -1.0]]), 1e-9).unwrap());
        assert!(schur_majorization_check(&FloatMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]), 1e-9).unwrap());
        assert!(!majorization_slacks(&[2.0, 2.0], &[3.0, 1.0], 1e-9));
    }

    #[test]
    fn square_roots() {
        let i = psd_sqrt(&FloatMatrix::identity(3), 1e-10).unwrap();
        assert!(i.sub(&FloatMatrix::identity(3)).frobenius_norm() < 1e-12);
        let a = FloatMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]]);
        let v = psd_sqrt(&a, 1e-10).unwrap();
        assert!(v.mul(&v).sub(&a).frobenius_norm() <= 1e-9);
        let gram = v.adjoint().mul(&v);
        assert!(gram.sub(&FloatMatrix::identity(2)).frobenius_norm() > 0.1, "not unitary");
        assert!(close(gram[(0, 0)].re, 1.0, 1e-9) && close(gram[(1, 1)].re, 1.0, 1e-9));
    }
}
