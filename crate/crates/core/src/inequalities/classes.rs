use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{format_entry, GaussianRational};
use crate::matrix::Matrix;
use crate::perm::IndexSet;

/// Every principal minor of a matrix, indexed by the bitmask of its index
/// set (bit `i` set iff row/column `i` is kept). The empty minor is 1.
#[derive(Debug, Clone)]
pub struct PrincipalMinors {
    n: usize,
    minors: Vec<GaussianRational>,
}

impl PrincipalMinors {
    pub const MAX_DIMENSION: usize = 16;

    pub fn compute(a: &Matrix) -> Self {
        let n = a.n();
        assert!(n <= Self::MAX_DIMENSION, "principal minor enumeration is limited to n ≤ 16");
        let minors = (0u64..1 << n)
            .map(|mask| {
                if mask == 0 {
                    GaussianRational::one()
                } else {
                    let g = IndexSet::from_mask(mask, n);
                    a.principal_submatrix(&g).expect("nonempty in range").determinant()
                }
            })
            .collect();
        PrincipalMinors { n, minors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: u64) -> &GaussianRational {
        &self.minors[mask as usize]
    }

    pub fn full(&self) -> &GaussianRational {
        self.get(self.full_mask())
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// First violated F-matrix condition, if any.
    pub fn f_violation(&self) -> Option<String> {
        let n = self.n;
        for mask in 1..=self.full_mask() {
            let m = self.get(mask);
            if !m.im.is_zero() {
                return Some(format!(
                    "principal minor on {} is not real ({})",
                    IndexSet::from_mask(mask, n),
                    format_entry(m)
                ));
            }
            if m.re.is_negative() {
                return Some(format!(
                    "principal minor on {} is negative ({})",
                    IndexSet::from_mask(mask, n),
                    format_entry(m)
                ));
            }
        }
        let det = &self.full().re;
        for mask in 1..self.full_mask() {
            let split = &self.get(mask).re * &self.get(self.full_mask() ^ mask).re;
            if det > &split {
                return Some(format!(
                    "Fischer-type inequality fails for G = {}",
                    IndexSet::from_mask(mask, n)
                ));
            }
        }
        None
    }

    /// First negative principal minor, if any. Assumes a Hermitian source.
    pub fn psd_violation(&self) -> Option<String> {
        (1..=self.full_mask()).find_map(|mask| {
            let m = self.get(mask);
            (m.re.is_negative() || !m.im.is_zero()).then(|| {
                format!("principal minor on {} is {}", IndexSet::from_mask(mask, self.n), format_entry(m))
            })
        })
    }
}

pub fn psd_violation(a: &Matrix) -> Option<String> {
    if !a.is_hermitian() {
        return Some("matrix is not Hermitian".into());
    }
    PrincipalMinors::compute(a).psd_violation()
}

/// All `2^n − 1` principal minors nonnegative on a Hermitian matrix.
pub fn is_psd(a: &Matrix) -> bool {
    psd_violation(a).is_none()
}

/// Sylvester: Hermitian with every leading principal minor positive.
pub fn is_pd(a: &Matrix) -> bool {
    a.is_hermitian()
        && (1..=a.n()).all(|k| {
            let lead = IndexSet::new((0..k).collect()).expect("distinct");
            let d = a.principal_submatrix(&lead).expect("in range").determinant();
            d.im.is_zero() && d.re.is_positive()
        })
}

pub fn f_matrix_violation(a: &Matrix) -> Option<String> {
    PrincipalMinors::compute(a).f_violation()
}

/// Nonnegative principal minors satisfying `det A ≤ det A[G] det A[Gᶜ]` for
/// every nonempty proper `G`.
pub fn is_f_matrix(a: &Matrix) -> bool {
    f_matrix_violation(a).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MatrixClassLabel {
    Pd,
    Psd,
    FMatrix,
    Hermitian,
    None,
}

/// The most specific label that applies.
pub fn classify_matrix(a: &Matrix) -> MatrixClassLabel {
    if is_pd(a) {
        MatrixClassLabel::Pd
    } else if is_psd(a) {
        MatrixClassLabel::Psd
    } else if is_f_matrix(a) {
        MatrixClassLabel::FMatrix
    } else if a.is_hermitian() {
        MatrixClassLabel::Hermitian
    } else {
        MatrixClassLabel::None
    }
}
