use num_traits::Zero;

use super::classes::{is_pd, PrincipalMinors};
use super::{require_real, EqualityCase, TheoremId, VerdictReport};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::perm::IndexSet;

/// `det A ≤ a_11 ⋯ a_nn` for an F-matrix (in particular any PSD matrix).
///
/// Equality on a positive definite matrix forces it to be diagonal; any
/// other tight case on a singular or non-Hermitian input is reported as
/// `unclassified`.
pub fn check_hadamard(a: &Matrix) -> Result<VerdictReport> {
    let minors = PrincipalMinors::compute(a);
    if let Some(why) = minors.f_violation() {
        return Err(Error::NotFMatrix(why));
    }
    let det = minors.full().re.clone();
    let diag = require_real(a.diag_product(), "diagonal product")?;
    let report = VerdictReport::square_compared(TheoremId::Hadamard, diag - det, Rational::zero());
    if !report.equality {
        if a.is_diagonal() {
            return Err(Error::Contradiction("diagonal matrix with strict Hadamard inequality".into()));
        }
        return Ok(report);
    }
    if a.is_diagonal() {
        return Ok(report.with_case(EqualityCase::Diagonal));
    }
    if is_pd(a) {
        return Err(Error::Contradiction(
            "positive definite, non-diagonal matrix attains Hadamard equality".into(),
        ));
    }
    Ok(report.with_case(EqualityCase::Unclassified))
}

/// `det A ≤ det A[G] · det A[Gᶜ]` for PSD `A` and nonempty proper `G`.
pub fn check_fischer(a: &Matrix, g: &IndexSet) -> Result<VerdictReport> {
    let n = a.n();
    g.check_within(n)?;
    if g.is_empty() || g.len() == n {
        return Err(Error::InvalidIndexSet(format!("{g} must be a nonempty proper subset of 1..{n}")));
    }
    if let Some(why) = super::classes::psd_violation(a) {
        return Err(Error::Precondition(format!("not positive semidefinite: {why}")));
    }
    let comp = g.complement(n);
    let split = a.principal_submatrix(g)?.determinant() * a.principal_submatrix(&comp)?.determinant();
    let gap = require_real(split - a.determinant(), "Fischer gap")?;
    let report = VerdictReport::square_compared(TheoremId::Fischer, gap, Rational::zero());
    let decoupled = g.members().iter().all(|&i| comp.members().iter().all(|&j| a[(i, j)].is_zero()));
    match (report.equality, decoupled) {
        (true, true) => Ok(report.with_case(EqualityCase::BlockDiagonal)),
        (false, true) => Err(Error::Contradiction(format!("block-diagonal split {g} with strict Fischer inequality"))),
        (true, false) if is_pd(a) => Err(Error::Contradiction(format!(
            "positive definite matrix attains Fischer equality on {g} without decoupling"
        ))),
        (true, false) => Ok(report.with_case(EqualityCase::Unclassified)),
        (false, false) => Ok(report),
    }
}
