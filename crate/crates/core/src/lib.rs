//! Exact verification of the Hadamard determinant inequality, its
//! Zhang–Yang sharpening `det A + (∏ a_{iσ(i)} a_{σ(i)i})^{1/2} ≤ ∏ a_ii`, and
//! the frame, Hadamard-product and block extensions.
//!
//! Everything on the verdict path is exact rational arithmetic. The
//! [`eigen`] module is floating point and serves only as a numeric
//! companion.

pub mod arith;
pub mod eigen;
pub mod error;
pub mod generators;
pub mod inequalities;
pub mod majorization;
pub mod matrix;
pub mod perm;

pub use arith::{GaussianRational, Rational};
pub use error::{Error, Result};
pub use inequalities::{EqualityCase, TheoremId, VerdictReport};
pub use majorization::SpectrumVector;
pub use matrix::{BlockPartition, Matrix};
pub use perm::{IndexSet, Permutation};
