//! Exact verifiers for the Hadamard family of determinant inequalities.
//!
//! Every inequality of the form `lhs + √p ≤ rhs` is decided without square
//! roots: with `g = rhs − lhs`, it holds iff `g ≥ 0` and `g² ≥ p`, and it is
//! tight iff additionally `g² = p`. Inequalities without a square-root term
//! use `p = 0`.

mod block;
mod classes;
mod frame;
mod hadamard;
mod zy;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, Rational};
use crate::error::Error;

pub use block::{check_block_zy, check_thompson};
pub use classes::{
    classify_matrix, f_matrix_violation, is_f_matrix, is_pd, is_psd, psd_violation, MatrixClassLabel,
    PrincipalMinors,
};
pub use frame::{check_frame_product, check_frame_zy, PreparedFrame};
pub use hadamard::{check_fischer, check_hadamard};
pub use zy::{
    check_hadamard_product_form, check_refined, check_zy, classify_equality, orbit_rank_condition,
    PreparedMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "hadamard")]
    Hadamard,
    #[serde(rename = "fischer")]
    Fischer,
    #[serde(rename = "zy")]
    Zy,
    #[serde(rename = "refined")]
    Refined,
    #[serde(rename = "frameProduct")]
    FrameProduct,
    #[serde(rename = "frameZY")]
    FrameZy,
    #[serde(rename = "hprod")]
    Hprod,
    #[serde(rename = "thompson")]
    Thompson,
    #[serde(rename = "blockZY")]
    BlockZy,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Hadamard,
        TheoremId::Fischer,
        TheoremId::Zy,
        TheoremId::Refined,
        TheoremId::FrameProduct,
        TheoremId::FrameZy,
        TheoremId::Hprod,
        TheoremId::Thompson,
        TheoremId::BlockZy,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::Hadamard => "hadamard",
            TheoremId::Fischer => "fischer",
            TheoremId::Zy => "zy",
            TheoremId::Refined => "refined",
            TheoremId::FrameProduct => "frameProduct",
            TheoremId::FrameZy => "frameZY",
            TheoremId::Hprod => "hprod",
            TheoremId::Thompson => "thompson",
            TheoremId::BlockZy => "blockZY",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::Parse { what: "theorem tag", input: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EqualityCase {
    Diagonal,
    CollinearOrbits,
    BlockDiagonal,
    TranspositionOnComplement,
    /// Equality in the frame product inequality with `|v_ij|²` a
    /// permutation matrix.
    PermutationFrame,
    NotEqual,
    Unclassified,
}

impl EqualityCase {
    pub fn tag(self) -> &'static str {
        match self {
            EqualityCase::Diagonal => "diagonal",
            EqualityCase::CollinearOrbits => "collinearOrbits",
            EqualityCase::BlockDiagonal => "blockDiagonal",
            EqualityCase::TranspositionOnComplement => "transpositionOnComplement",
            EqualityCase::PermutationFrame => "permutationFrame",
            EqualityCase::NotEqual => "notEqual",
            EqualityCase::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for EqualityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Outcome of one exact inequality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub theorem: TheoremId,
    pub holds: bool,
    /// `rhs − lhs` without the square-root term.
    pub g: Rational,
    /// The square of the square-root term (zero when there is none).
    pub p: Rational,
    pub equality: bool,
    pub case: EqualityCase,
    pub note: Option<String>,
}

impl VerdictReport {
    pub(crate) fn square_compared(theorem: TheoremId, g: Rational, p: Rational) -> Self {
        let g2 = &g * &g;
        let holds = !g.is_negative() && g2 >= p;
        let equality = holds && g2 == p;
        let case = if equality { EqualityCase::Unclassified } else { EqualityCase::NotEqual };
        VerdictReport { theorem, holds, g, p, equality, case, note: None }
    }

    /// For callers that already decided `holds` and `equality` exactly.
    pub(crate) fn from_parts(theorem: TheoremId, g: Rational, p: Rational, holds: bool, equality: bool) -> Self {
        debug_assert_eq!(holds, !g.is_negative() && &g * &g >= p);
        let case = if equality { EqualityCase::Unclassified } else { EqualityCase::NotEqual };
        VerdictReport { theorem, holds, g, p, equality, case, note: None }
    }

    pub fn g_squared(&self) -> Rational {
        &self.g * &self.g
    }

    /// `g² − p`, nonnegative whenever the inequality holds.
    pub fn slack(&self) -> Rational {
        self.g_squared() - &self.p
    }

    pub(crate) fn with_case(mut self, case: EqualityCase) -> Self {
        self.case = case;
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

impl Serialize for VerdictReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            theorem: TheoremId,
            holds: bool,
            g: String,
            g_squared: String,
            p: String,
            equality: bool,
            case: EqualityCase,
            #[serde(skip_serializing_if = "Option::is_none")]
            note: Option<&'a str>,
        }
        Wire {
            theorem: self.theorem,
            holds: self.holds,
            g: format_rational(&self.g),
            g_squared: format_rational(&self.g_squared()),
            p: format_rational(&self.p),
            equality: self.equality,
            case: self.case,
            note: self.note.as_deref(),
        }
        .serialize(s)
    }
}

/// Real part of a quantity that must be real, or a diagnostic.
pub(crate) fn require_real(z: crate::arith::GaussianRational, what: &str) -> Result<Rational, Error> {
    if z.im.is_zero() {
        Ok(z.re)
    } else {
        Err(Error::Precondition(format!("{what} has a nonzero imaginary part")))
    }
}
