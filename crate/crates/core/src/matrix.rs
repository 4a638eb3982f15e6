//! Dense square matrices over the Gaussian rationals.
//!
//! Determinants and ranks use fraction-free (Bareiss) elimination: the
//! matrix is scaled by the lcm of its denominators to a Gaussian-integer
//! matrix, eliminated with exact divisions, and scaled back.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    common_denominator, format_entry, from_gaussian_int, parse_entry, real, scale_to_integer,
    GaussianInt, GaussianRational, Rational,
};
use crate::error::{Error, Result};
use crate::perm::{IndexSet, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![GaussianRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Precondition("matrix must be at least 1x1".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Convenience for real rational literals, e.g. `[[2,1],[1,2]]`.
    pub fn from_real_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().cloned().map(real).collect()).collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| real(Rational::from_integer(v.into()))).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[GaussianRational]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i].clone() } else { GaussianRational::zero() })
    }

    pub fn real_diagonal(values: &[Rational]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { real(values[i].clone()) } else { GaussianRational::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diag(&self) -> Vec<GaussianRational> {
        (0..self.n).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn trace(&self) -> GaussianRational {
        self.diag().into_iter().fold(GaussianRational::zero(), |a, b| a + b)
    }

    pub fn diag_product(&self) -> GaussianRational {
        self.diag().into_iter().fold(GaussianRational::one(), |a, b| a * b)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    fn check_same_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_dim(other)?;
        // Multiply over the Gaussian integers, normalizing each entry once.
        let (sa, sb) = (common_denominator(&self.data), common_denominator(&other.data));
        let (a, b) = (self.scaled_rows(&sa), other.scaled_rows(&sb));
        let denom = sa * sb;
        Ok(Matrix::from_fn(self.n, |i, j| {
            let z = (0..self.n).fold(GaussianInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j]);
            GaussianRational::new(Rational::new(z.re, denom.clone()), Rational::new(z.im, denom.clone()))
        }))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> GaussianRational {
        let scale = common_denominator(&self.data);
        let mut rows = self.scaled_rows(&scale);
        let det = bareiss_determinant(&mut rows);
        let denom = Rational::from_integer(scale.pow(self.n as u32));
        let d = from_gaussian_int(det);
        GaussianRational::new(d.re / &denom, d.im / &denom)
    }

    /// Exact rank by fraction-free row echelon form.
    pub fn rank(&self) -> usize {
        rank_of_columns(self, &(0..self.n).collect::<Vec<_>>())
    }

    fn scaled_rows(&self, scale: &BigInt) -> Vec<Vec<GaussianInt>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|z| scale_to_integer(z, scale)).collect())
            .collect()
    }

    pub fn principal_submatrix(&self, g: &IndexSet) -> Result<Matrix> {
        if g.is_empty() {
            return Err(Error::InvalidIndexSet("principal submatrix needs a nonempty index set".into()));
        }
        g.check_within(self.n)?;
        let idx = g.members();
        Ok(Matrix::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])].clone()))
    }

    /// Entrywise product.
    pub fn hadamard_product(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_dim(other)?;
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    /// True iff every 2x2 minor built from columns `i` and `j` vanishes.
    /// A zero column is collinear with every column.
    pub fn columns_collinear(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let n = self.n;
        (0..n).all(|r| {
            (r + 1..n).all(|s| {
                let minor = &self[(r, i)] * &self[(s, j)] - &self[(s, i)] * &self[(r, j)];
                minor.is_zero()
            })
        })
    }

    /// True iff column `i` is a multiple of the `i`-th standard basis vector.
    pub fn column_is_axis(&self, i: usize) -> bool {
        (0..self.n).all(|r| r == i || self[(r, i)].is_zero())
    }

    /// Rank of the n x |cols| submatrix formed by the given columns.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        rank_of_columns(self, cols)
    }

    /// The block at block-row `bi`, block-column `bj`, or `None` when that
    /// block is not square.
    pub fn block(&self, part: &BlockPartition, bi: usize, bj: usize) -> Option<Matrix> {
        let (h, w) = (part.sizes()[bi], part.sizes()[bj]);
        if h != w {
            return None;
        }
        let (r0, c0) = (part.offset(bi), part.offset(bj));
        Some(Matrix::from_fn(h, |i, j| self[(r0 + i, c0 + j)].clone()))
    }

    /// The m x m matrix of block determinants `(det A_ij)`. Blocks
    /// `A_ij` with different sizes are not square, so every block must
    /// share a size with its row and column; only partitions whose sizes
    /// are all equal satisfy that off the diagonal.
    pub fn block_determinant_matrix(&self, part: &BlockPartition) -> Result<Matrix> {
        part.check_dimension(self.n)?;
        let sizes = part.sizes();
        if sizes.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidPartition(format!(
                "blocks A_ij are square only when all sizes agree, got {sizes:?}"
            )));
        }
        let m = part.len();
        Ok(Matrix::from_fn(m, |i, j| self.block(part, i, j).expect("equal sizes").determinant()))
    }

    /// True iff every entry outside the diagonal blocks is zero.
    pub fn is_block_diagonal(&self, part: &BlockPartition) -> bool {
        let owner = part.owners();
        (0..self.n).all(|i| (0..self.n).all(|j| owner[i] == owner[j] || self[(i, j)].is_zero()))
    }

    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            data: (0..self.n).map(|i| self.row(i).iter().map(format_entry).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse { what: "matrix JSON", input: e.to_string() })?;
        raw.try_into()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;

    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on a dimension mismatch; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(format_entry).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form: `{"n": 2, "data": [["2/1","1/1"],["1/1","2/1"]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub data: Vec<Vec<String>>,
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Matrix> {
        if raw.data.len() != raw.n {
            return Err(Error::DimensionMismatch { expected: raw.n, found: raw.data.len() });
        }
        let rows = raw
            .data
            .iter()
            .map(|r| r.iter().map(|s| parse_entry(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

/// 0/1 matrix with `p[i][τ(i)] = 1`.
pub fn permutation_matrix(tau: &Permutation) -> Matrix {
    Matrix::from_fn(tau.len(), |i, j| {
        if tau.apply(i) == j {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    })
}

/// Consecutive square diagonal blocks of the given sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockPartition {
    sizes: Vec<usize>,
}

impl BlockPartition {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidPartition(format!("sizes must be positive, got {sizes:?}")));
        }
        Ok(BlockPartition { sizes })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse { what: "partition", input: s.to_string() })?;
        BlockPartition::new(sizes)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BlockPartition = serde_json::from_str(s)
            .map_err(|e| Error::Parse { what: "partition JSON", input: e.to_string() })?;
        BlockPartition::new(raw.sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.sizes[..block].iter().sum()
    }

    /// Block index owning each row.
    pub fn owners(&self) -> Vec<usize> {
        self.sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        if self.dimension() != n {
            return Err(Error::InvalidPartition(format!(
                "sizes {:?} sum to {}, matrix is {n}x{n}",
                self.sizes,
                self.dimension()
            )));
        }
        Ok(())
    }
}

fn gaussian_exact_div(num: GaussianInt, den: &GaussianInt) -> GaussianInt {
    let q = &num / den;
    debug_assert_eq!(&q * den, num, "Bareiss division must be exact");
    q
}

/// Bareiss determinant of a square Gaussian-integer matrix, destroying it.
fn bareiss_determinant(m: &mut [Vec<GaussianInt>]) -> GaussianInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = GaussianInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return GaussianInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = gaussian_exact_div(t, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn rank_of_columns(a: &Matrix, cols: &[usize]) -> usize {
    let scale = common_denominator(&a.data);
    let mut m: Vec<Vec<GaussianInt>> = (0..a.n)
        .map(|i| cols.iter().map(|&j| scale_to_integer(&a[(i, j)], &scale)).collect())
        .collect();
    let (rows, width) = (m.len(), cols.len());
    let mut prev = GaussianInt::one();
    let mut rank = 0;
    for col in 0..width {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..width {
                let t = &m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j];
                m[i][j] = gaussian_exact_div(t, &prev);
            }
            m[i][col] = GaussianInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
