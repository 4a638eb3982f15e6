use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a frame: {0}")]
    NotFrame(String),

    #[error("not an F-matrix: {0}")]
    NotFMatrix(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// An equality case on a positive definite input matched none of the
    /// known equality conditions. Either the implementation or the theorem
    /// is wrong; fuzz campaigns abort on this.
    #[error("equality classification failed: {0}")]
    ClassificationFailure(String),

    /// A theorem's conclusion was contradicted by an exact computation.
    #[error("theorem contradicted: {0}")]
    Contradiction(String),
}

impl Error {
    /// True for errors that indicate a mathematical violation rather than
    /// bad input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::ClassificationFailure(_) | Error::Contradiction(_))
    }
}
