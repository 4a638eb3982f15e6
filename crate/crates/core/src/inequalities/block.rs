use num_traits::One;

use super::classes::is_pd;
use super::{require_real, EqualityCase, TheoremId, VerdictReport};
use crate::arith::{modulus_squared, Rational};
use crate::error::{Error, Result};
use crate::matrix::{BlockPartition, Matrix};
use crate::perm::Permutation;

fn require_pd(a: &Matrix) -> Result<()> {
    if !is_pd(a) {
        return Err(Error::Precondition("matrix is not positive definite".into()));
    }
    Ok(())
}

/// Applies the "equality iff block diagonal" rule to a report. With 1x1
/// blocks `(det A_ij)` is `A` itself, so Thompson's inequality is always
/// tight and the block ZY form is the scalar one; neither follows that rule.
fn classify_block(
    report: VerdictReport,
    a: &Matrix,
    part: &BlockPartition,
    tau: Option<&Permutation>,
) -> Result<VerdictReport> {
    let scalar_blocks = part.sizes().iter().all(|&s| s == 1);
    match (report.equality, a.is_block_diagonal(part)) {
        (true, true) => Ok(report.with_case(EqualityCase::BlockDiagonal)),
        (false, false) => Ok(report),
        (true, false) if scalar_blocks => match tau {
            None => Ok(report
                .with_case(EqualityCase::Unclassified)
                .with_note("1x1 blocks: det(det A_ij) = det A")),
            Some(tau) => {
                let case = super::zy::classify(a, tau, true)?;
                Ok(report.with_case(case))
            }
        },
        (true, false) => Err(Error::Contradiction(format!(
            "{} is tight on a matrix that is not block diagonal",
            report.theorem
        ))),
        (false, true) => Err(Error::Contradiction(format!(
            "{} is strict on a block-diagonal matrix",
            report.theorem
        ))),
    }
}

/// `det A ≤ det(det A_ij)` for positive definite `A`.
pub fn check_thompson(a: &Matrix, part: &BlockPartition) -> Result<VerdictReport> {
    require_pd(a)?;
    let d = a.block_determinant_matrix(part)?;
    let g = require_real(d.determinant(), "det(det A_ij)")? - require_real(a.determinant(), "det A")?;
    classify_block(VerdictReport::square_compared(TheoremId::Thompson, g, Rational::from_integer(0.into())), a, part, None)
}

/// `det A + ∏ |det A_{iτ(i)}| ≤ ∏ det A_ii` for positive definite `A` and a
/// derangement τ of the block indices.
pub fn check_block_zy(a: &Matrix, part: &BlockPartition, tau: &Permutation) -> Result<VerdictReport> {
    require_pd(a)?;
    let d = a.block_determinant_matrix(part)?;
    let m = part.len();
    if tau.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: tau.len() });
    }
    if !tau.is_derangement() {
        return Err(Error::Precondition(format!("τ = {tau} is not a derangement of the blocks")));
    }
    let diag = require_real(d.diag_product(), "∏ det A_ii")?;
    let g = diag - require_real(a.determinant(), "det A")?;
    let p = (0..m).fold(Rational::one(), |acc, i| acc * modulus_squared(&d[(i, tau.apply(i))]));
    classify_block(VerdictReport::square_compared(TheoremId::BlockZy, g, p), a, part, Some(tau))
}
