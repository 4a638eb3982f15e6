use num_traits::{One, Zero};

use super::{require_real, EqualityCase, TheoremId, VerdictReport};
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::majorization::{frame_congruence, frame_to_ds, real_diagonal, DoublyStochasticMatrix, SpectrumVector};
use crate::matrix::Matrix;
use crate::perm::Permutation;

/// A checked frame with `B = V*ΛV`, `V*V` and `(|v_ij|²)` computed once.
#[derive(Debug, Clone)]
pub struct PreparedFrame {
    lambda: SpectrumVector,
    s: DoublyStochasticMatrix,
    b: Matrix,
    gram: Matrix,
    diag_product: Rational,
}

impl PreparedFrame {
    pub fn new(lambda: &SpectrumVector, v: &Matrix) -> Result<Self> {
        let s = frame_to_ds(v)?;
        let b = frame_congruence(lambda, v)?;
        let gram = v.adjoint().try_mul(v)?;
        let diag_product = real_diagonal(&b).iter().product();
        Ok(PreparedFrame { lambda: lambda.clone(), s, b, gram, diag_product })
    }

    pub fn congruence(&self) -> &Matrix {
        &self.b
    }

    pub fn doubly_stochastic(&self) -> &DoublyStochasticMatrix {
        &self.s
    }

    /// `(V*V)_{iτ(i)} = 0` for every `i`.
    pub fn admits(&self, tau: &Permutation) -> bool {
        tau.len() == self.gram.n() && (0..tau.len()).all(|i| self.gram[(i, tau.apply(i))].is_zero())
    }

    /// `∏ λ_i ≤ ∏ b_ii`.
    ///
    /// When `n ≥ 3` and the λ are distinct and strictly positive, equality
    /// forces `(|v_ij|²)` to be a permutation matrix; a tight instance that
    /// is not is reported as a contradiction.
    pub fn check_frame_product(&self) -> Result<VerdictReport> {
        let g = &self.diag_product - self.lambda.product();
        let report = VerdictReport::square_compared(TheoremId::FrameProduct, g, Rational::zero());
        if !report.equality {
            return Ok(report);
        }
        if self.s.is_permutation() {
            return Ok(report.with_case(EqualityCase::PermutationFrame));
        }
        let lambda = &self.lambda;
        let generic = lambda.len() >= 3
            && lambda.is_distinct()
            && lambda.values().iter().all(|l| l > &Rational::zero());
        if generic {
            return Err(Error::Contradiction(
                "equality with distinct positive spectrum but |v_ij|² is not a permutation matrix".into(),
            ));
        }
        Ok(report.with_case(EqualityCase::Unclassified))
    }

    /// `∏ λ_i + ∏ |b_{iτ(i)}| ≤ ∏ b_ii`, given `(V*V)_{iτ(i)} = 0` for every
    /// `i`. No equality conditions are known; tight instances are
    /// `unclassified`.
    pub fn check_frame_zy(&self, tau: &Permutation) -> Result<VerdictReport> {
        let n = self.b.n();
        if tau.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: tau.len() });
        }
        if !tau.is_derangement() {
            return Err(Error::Precondition(format!("τ = {tau} is not a derangement")));
        }
        if let Some(i) = (0..n).find(|&i| !self.gram[(i, tau.apply(i))].is_zero()) {
            return Err(Error::Precondition(format!("(V*V)_({},{}) is nonzero", i + 1, tau.apply(i) + 1)));
        }
        let cross = (0..n).fold(GaussianRational::one(), |acc, i| {
            let j = tau.apply(i);
            acc * (&self.b[(i, j)] * &self.b[(j, i)])
        });
        let p = require_real(cross, "cross-term product")?;
        Ok(VerdictReport::square_compared(TheoremId::FrameZy, &self.diag_product - self.lambda.product(), p))
    }
}

pub fn check_frame_product(lambda: &SpectrumVector, v: &Matrix) -> Result<VerdictReport> {
    PreparedFrame::new(lambda, v)?.check_frame_product()
}

pub fn check_frame_zy(lambda: &SpectrumVector, v: &Matrix, tau: &Permutation) -> Result<VerdictReport> {
    PreparedFrame::new(lambda, v)?.check_frame_zy(tau)
}
