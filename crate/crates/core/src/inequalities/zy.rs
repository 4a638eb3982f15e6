//! The Zhang–Yang sharpening `det A + (∏ a_{iσ(i)} a_{σ(i)i})^{1/2} ≤ ∏ a_ii`,
//! its derangement form for PSD matrices, the Hadamard-product form, and
//! the equality classifier.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::classes::{is_pd, PrincipalMinors};
use super::{require_real, EqualityCase, TheoremId, VerdictReport};
use crate::arith::{common_denominator, format_entry, modulus_squared, scale_to_integer, GaussianInt, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::matrix::{permutation_matrix, Matrix};
use crate::perm::Permutation;

/// An F-matrix with its gate checks and the permutation-independent
/// quantities computed once, so that many permutations can be checked
/// cheaply.
#[derive(Debug, Clone)]
pub struct PreparedMatrix {
    a: Matrix,
    det: Rational,
    diag_product: Rational,
    hermitian: bool,
    pd: bool,
    cross_term_violation: Option<String>,
    /// `A = M / scale` with `M` over the Gaussian integers.
    scaled: Vec<GaussianInt>,
    /// `scale^(2n)`.
    scale_2n: BigInt,
    /// `g · scale^n`, an integer.
    g_scaled: BigInt,
    g_scaled_sq: BigInt,
    masked_diag_det: Option<Rational>,
}

impl PreparedMatrix {
    /// Fails with [`Error::NotFMatrix`] unless every principal minor is
    /// nonnegative and every Fischer-type split holds.
    pub fn new(a: Matrix) -> Result<Self> {
        let minors = PrincipalMinors::compute(&a);
        if let Some(why) = minors.f_violation() {
            return Err(Error::NotFMatrix(why));
        }
        let det = minors.full().re.clone();
        let diag_product = require_real(a.diag_product(), "diagonal product")?;
        let hermitian = a.is_hermitian();
        let pd = hermitian && is_pd(&a);
        let cross_term_violation = cross_term_violation(&a);
        let n = a.n() as u32;
        let scale = common_denominator(a.entries());
        let scaled = a.entries().iter().map(|z| scale_to_integer(z, &scale)).collect();
        let scale_n = Pow::pow(&scale, n);
        let g_rat = (&diag_product - &det) * Rational::from_integer(scale_n.clone());
        debug_assert!(g_rat.is_integer());
        let g_scaled = g_rat.to_integer();
        let g_scaled_sq = &g_scaled * &g_scaled;
        let masked_diag_det = if hermitian {
            Some(require_real(a.hadamard_product(&Matrix::identity(a.n()))?.determinant(), "det(A∘I)")?)
        } else {
            None
        };
        Ok(PreparedMatrix {
            a,
            det,
            diag_product,
            hermitian,
            pd,
            cross_term_violation,
            scaled,
            scale_2n: &scale_n * &scale_n,
            g_scaled,
            g_scaled_sq,
            masked_diag_det,
        })
    }

    fn scaled_entry(&self, i: usize, j: usize) -> &GaussianInt {
        &self.scaled[i * self.a.n() + j]
    }

    /// Decides `g ≥ 0 ∧ g² ≥ p` on the integer images `g·scale^n` and
    /// `p·scale^(2n)`.
    fn integer_verdict(&self, theorem: TheoremId, p_scaled: BigInt) -> VerdictReport {
        let holds = !self.g_scaled.is_negative() && self.g_scaled_sq >= p_scaled;
        let equality = holds && self.g_scaled_sq == p_scaled;
        let p = Rational::new(p_scaled, self.scale_2n.clone());
        VerdictReport::from_parts(theorem, &self.diag_product - &self.det, p, holds, equality)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn determinant(&self) -> &Rational {
        &self.det
    }

    pub fn is_pd(&self) -> bool {
        self.pd
    }

    pub fn is_psd(&self) -> bool {
        self.hermitian
    }

    fn check_dimension(&self, sigma: &Permutation) -> Result<()> {
        if sigma.len() != self.a.n() {
            return Err(Error::DimensionMismatch { expected: self.a.n(), found: sigma.len() });
        }
        Ok(())
    }

    /// `∏ a_{iσ(i)} a_{σ(i)i}`, real and nonnegative on F-matrices.
    pub fn cross_product(&self, sigma: &Permutation) -> GaussianRational {
        let z = self.scaled_cross_product(sigma);
        let d = Rational::from_integer(self.scale_2n.clone());
        GaussianRational::new(Rational::from_integer(z.re) / &d, Rational::from_integer(z.im) / d)
    }

    fn scaled_cross_product(&self, sigma: &Permutation) -> GaussianInt {
        (0..self.a.n()).fold(GaussianInt::one(), |acc, i| {
            let j = sigma.apply(i);
            acc * (self.scaled_entry(i, j) * self.scaled_entry(j, i))
        })
    }

    /// General F-matrix form with any non-identity permutation.
    pub fn check_zy(&self, sigma: &Permutation) -> Result<VerdictReport> {
        self.check_dimension(sigma)?;
        if sigma.is_identity() {
            return Err(Error::Precondition("σ must not be the identity permutation".into()));
        }
        if let Some(why) = &self.cross_term_violation {
            let g = &self.diag_product - &self.det;
            let mut r = VerdictReport::square_compared(TheoremId::Zy, g, Rational::zero());
            r.holds = false;
            r.equality = false;
            r.case = EqualityCase::NotEqual;
            return Ok(r.with_note(why.clone()));
        }
        let z = self.scaled_cross_product(sigma);
        if !z.im.is_zero() {
            return Err(Error::Precondition("cross-term product is not real".into()));
        }
        let report = self.integer_verdict(TheoremId::Zy, z.re);
        self.finish(report, sigma)
    }

    /// PSD form with a derangement τ (`n = 2` accepted; it is always tight).
    pub fn check_refined(&self, tau: &Permutation) -> Result<VerdictReport> {
        self.require_psd_derangement(tau)?;
        let p = (0..self.a.n()).fold(BigInt::one(), |acc, i| acc * self.scaled_entry(i, tau.apply(i)).norm_sqr());
        let report = self.integer_verdict(TheoremId::Refined, p);
        self.finish(report, tau)
    }

    /// `det(A∘I) ≥ det A + |det(A∘P)|` where `P` is the permutation matrix
    /// of τ. `det(A∘P)` is evaluated as a determinant, not as a product.
    pub fn check_hadamard_product_form(&self, tau: &Permutation) -> Result<VerdictReport> {
        self.require_psd_derangement(tau)?;
        let masked_diag = self.masked_diag_det.as_ref().expect("Hermitian");
        let g = masked_diag - &self.det;
        let p = modulus_squared(&self.a.hadamard_product(&permutation_matrix(tau))?.determinant());
        let report = VerdictReport::square_compared(TheoremId::Hprod, g, p);
        self.finish(report, tau)
    }

    fn require_psd_derangement(&self, tau: &Permutation) -> Result<()> {
        self.check_dimension(tau)?;
        if !self.hermitian {
            return Err(Error::Precondition("matrix must be Hermitian positive semidefinite".into()));
        }
        if !tau.is_derangement() {
            return Err(Error::Precondition(format!("τ = {tau} is not a derangement")));
        }
        Ok(())
    }

    fn finish(&self, report: VerdictReport, sigma: &Permutation) -> Result<VerdictReport> {
        if !report.equality {
            return Ok(report);
        }
        let case = classify(&self.a, sigma, self.pd)?;
        Ok(report.with_case(case))
    }
}

fn cross_term_violation(a: &Matrix) -> Option<String> {
    let n = a.n();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find_map(|(i, j)| {
        let c = &a[(i, j)] * &a[(j, i)];
        (!c.im.is_zero() || c.re.is_negative()).then(|| {
            format!("a_{0}{1}·a_{1}{0} = {2} is not a nonnegative real", i + 1, j + 1, format_entry(&c))
        })
    })
}

/// Decides which stated equality condition a tight instance satisfies.
pub(super) fn classify(a: &Matrix, sigma: &Permutation, pd: bool) -> Result<EqualityCase> {
    if a.is_diagonal() {
        return Ok(EqualityCase::Diagonal);
    }
    let n = a.n();
    let fixed_ok = sigma.fixed_points().members().iter().all(|&i| a.column_is_axis(i));
    if fixed_ok {
        if sigma.is_transposition() {
            return Ok(EqualityCase::TranspositionOnComplement);
        }
        let moved_collinear = (0..n)
            .filter(|&i| sigma.apply(i) != i)
            .all(|i| a.columns_collinear(i, sigma.apply(i)));
        if moved_collinear {
            return Ok(EqualityCase::CollinearOrbits);
        }
    }
    if pd {
        return Err(Error::ClassificationFailure(format!(
            "positive definite matrix is tight for σ = {sigma} but matches no equality condition:\n{a}"
        )));
    }
    Ok(EqualityCase::Unclassified)
}

/// Classifies a tight ZY-type report. Positive definite inputs must match
/// a stated condition; singular ones fall back to `unclassified`.
pub fn classify_equality(a: &Matrix, sigma: &Permutation, report: &VerdictReport) -> Result<EqualityCase> {
    if !report.equality {
        return Err(Error::Precondition("classification needs a tight report".into()));
    }
    if sigma.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: sigma.len() });
    }
    classify(a, sigma, is_pd(a))
}

/// Every orbit `J` of τ has `rank(A P_J) ≤ 1`.
pub fn orbit_rank_condition(a: &Matrix, tau: &Permutation) -> Result<bool> {
    if tau.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: tau.len() });
    }
    if !tau.is_derangement() {
        return Err(Error::Precondition(format!("τ = {tau} is not a derangement")));
    }
    Ok(tau.orbits().iter().all(|orbit| a.column_rank(orbit.members()) <= 1))
}

pub fn check_zy(a: &Matrix, sigma: &Permutation) -> Result<VerdictReport> {
    PreparedMatrix::new(a.clone())?.check_zy(sigma)
}

pub fn check_refined(a: &Matrix, tau: &Permutation) -> Result<VerdictReport> {
    PreparedMatrix::new(a.clone())?.check_refined(tau)
}

pub fn check_hadamard_product_form(a: &Matrix, tau: &Permutation) -> Result<VerdictReport> {
    PreparedMatrix::new(a.clone())?.check_hadamard_product_form(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss, int, rat, real};
    use crate::perm::derangements;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn rank_one(v: &[GaussianRational]) -> Matrix {
        Matrix::from_fn(v.len(), |i, j| &v[i] * v[j].conj())
    }

    #[test]
    fn two_by_two_is_always_tight() {
        let a = Matrix::from_rows(vec![
            vec![real(int(3)), gauss(rat(1, 2), int(-1))],
            vec![gauss(rat(1, 2), int(1)), real(rat(7, 4))],
        ])
        .unwrap();
        let r = check_zy(&a, &p("2,1")).unwrap();
        assert!(r.holds && r.equality, "{r:?}");
        assert_eq!(r.case, EqualityCase::TranspositionOnComplement);
    }

    #[test]
    fn diagonal_is_tight() {
        let d = Matrix::real_diagonal(&[int(2), int(3), int(5)]);
        let r = check_zy(&d, &p("2,3,1")).unwrap();
        assert_eq!((r.g.clone(), r.p.clone()), (int(0), int(0)));
        assert!(r.equality);
        assert_eq!(r.case, EqualityCase::Diagonal);
        let r = check_zy(&Matrix::real_diagonal(&[int(1), int(2), int(3)]), &p("2,1,3")).unwrap();
        assert_eq!(r.case, EqualityCase::Diagonal);
    }

    #[test]
    fn rank_one_orbit_equality() {
        let v = [real(int(1)), gauss(int(1), int(-2)), real(rat(-1, 2))];
        let a = rank_one(&v);
        let tau = p("2,3,1");
        let r = check_zy(&a, &tau).unwrap();
        assert!(r.equality);
        assert!(r.slack().is_zero());
        assert_eq!(r.case, EqualityCase::CollinearOrbits);
        assert_eq!(a.determinant(), real(int(0)));
        let h = check_hadamard_product_form(&a, &tau).unwrap();
        assert!(h.equality);
        assert!(orbit_rank_condition(&a, &tau).unwrap());
    }

    #[test]
    fn strict_instance() {
        let a = m(&[&[4, 1, 1], &[1, 4, 1], &[1, 1, 4]]);
        for s in crate::perm::non_identity_permutations(3) {
            let r = check_zy(&a, &s).unwrap();
            assert!(r.holds && !r.equality, "{s}");
        }
        // det = 54, ∏ a_ii = 64; 3-cycle gives p = 1.
        let r = check_zy(&a, &p("2,3,1")).unwrap();
        assert_eq!(r.g, int(10));
        assert_eq!(r.p, int(1));
    }

    #[test]
    fn rejects_identity_and_non_f_matrices() {
        let a = m(&[&[2, 1], &[1, 2]]);
        assert!(check_zy(&a, &Permutation::identity(2)).is_err());
        assert!(matches!(check_zy(&m(&[&[1, 2], &[2, 1]]), &p("2,1")), Err(Error::NotFMatrix(_))));
        assert!(check_zy(&a, &p("2,3,1")).is_err());
    }

    #[test]
    fn non_hermitian_f_matrix() {
        // Upper triangular: det = ∏ a_ii and every cross term vanishes.
        let u = m(&[&[1, 5, 2], &[0, 2, 7], &[0, 0, 3]]);
        let r = check_zy(&u, &p("2,3,1")).unwrap();
        assert!(r.holds && r.equality);
        assert_eq!(r.case, EqualityCase::Unclassified);
        assert!(check_refined(&u, &p("2,3,1")).is_err());
    }

    #[test]
    fn classify_rejects_pd_without_condition() {
        let a = m(&[&[4, 1, 1], &[1, 4, 1], &[1, 1, 4]]);
        let fake = VerdictReport::square_compared(TheoremId::Zy, int(1), int(1));
        assert!(matches!(
            classify_equality(&a, &p("2,3,1"), &fake),
            Err(Error::ClassificationFailure(_))
        ));
        let strict = VerdictReport::square_compared(TheoremId::Zy, int(2), int(1));
        assert!(classify_equality(&a, &p("2,3,1"), &strict).is_err());
    }

    #[test]
    fn transposition_with_fixed_axis_column() {
        // Block diagonal: a 2x2 block on {1,2} and a lone diagonal entry.
        let a = m(&[&[2, 1, 0], &[1, 3, 0], &[0, 0, 5]]);
        let r = check_zy(&a, &p("2,1,3")).unwrap();
        assert!(r.equality);
        assert_eq!(r.case, EqualityCase::TranspositionOnComplement);
        // Coupling the fixed point breaks equality.
        let b = m(&[&[2, 1, 1], &[1, 3, 0], &[1, 0, 5]]);
        assert!(!check_zy(&b, &p("2,1,3")).unwrap().equality);
    }

    #[test]
    fn orbit_rank_examples() {
        let i4 = Matrix::identity(4);
        assert!(!orbit_rank_condition(&i4, &p("2,1,4,3")).unwrap());
        assert!(orbit_rank_condition(&i4, &p("1,2,4,3")).is_err());
        let v = [real(int(1)), real(int(2)), real(int(3)), real(int(4))];
        assert!(orbit_rank_condition(&rank_one(&v), &p("2,1,4,3")).unwrap());
        for tau in derangements(4) {
            let collinear = (0..4).all(|i| i4.columns_collinear(i, tau.apply(i)));
            assert_eq!(orbit_rank_condition(&i4, &tau).unwrap(), collinear);
        }
    }
}
