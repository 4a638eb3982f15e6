//! Seeded, exact constructions of test families.
//!
//! Random rationals are `k/m` with `k` uniform in `[-m, m]` (default
//! `m = 8`), drawn from a SplitMix64 stream. Identical inputs produce
//! identical matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::arith::{gauss, int, rat, real, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::inequalities::is_pd;
use crate::majorization::{DoublyStochasticMatrix, SpectrumVector};
use crate::matrix::{permutation_matrix, BlockPartition, Matrix};
use crate::perm::{derangements, IndexSet, Permutation};

pub const DEFAULT_DENOMINATOR: i64 = 8;

/// Pythagorean cosine/sine pairs used for exact rotations.
pub const PYTHAGOREAN: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];

/// Unimodular Gaussian rationals used as phases.
const PHASES: [(i64, i64, i64); 8] =
    [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (3, 4, 5), (4, -3, 5), (5, 12, 13), (-8, 15, 17)];

/// Mixes a base seed with a stream index; used to give every fuzz trial an
/// independent, reproducible seed.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    SplitMix64::seed_from_u64(base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)).next_u64()
}

/// Seeded source of exact random scalars.
#[derive(Debug, Clone)]
pub struct ExactRng {
    inner: SplitMix64,
    denominator: i64,
}

impl ExactRng {
    pub fn new(seed: u64) -> Self {
        Self::with_denominator(seed, DEFAULT_DENOMINATOR)
    }

    pub fn with_denominator(seed: u64, denominator: i64) -> Self {
        assert!(denominator >= 1);
        ExactRng { inner: SplitMix64::seed_from_u64(seed), denominator }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.inner.gen_range(0..bound)
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.inner.gen_range(lo..=hi_inclusive)
    }

    /// `k/m`, `k` uniform in `[-m, m]`.
    pub fn rational(&mut self) -> Rational {
        let m = self.denominator;
        rat(self.inner.gen_range(-m..=m), m)
    }

    /// `k/m`, `k` uniform in `[1, m]`.
    pub fn positive_rational(&mut self) -> Rational {
        let m = self.denominator;
        rat(self.inner.gen_range(1..=m), m)
    }

    pub fn gaussian(&mut self) -> GaussianRational {
        gauss(self.rational(), self.rational())
    }

    pub fn nonzero_gaussian(&mut self) -> GaussianRational {
        loop {
            let z = self.gaussian();
            if !z.is_zero() {
                return z;
            }
        }
    }

    pub fn phase(&mut self) -> GaussianRational {
        let (a, b, c) = PHASES[self.below(PHASES.len())];
        gauss(rat(a, c), rat(b, c))
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(&mut self.inner);
        Permutation::new(image).expect("shuffle is a bijection")
    }

    pub fn non_identity_permutation(&mut self, n: usize) -> Permutation {
        assert!(n >= 2);
        loop {
            let p = self.permutation(n);
            if !p.is_identity() {
                return p;
            }
        }
    }

    /// Uniform over derangements of `n ≥ 2` (rejection sampling).
    pub fn derangement(&mut self, n: usize) -> Permutation {
        assert!(n >= 2);
        loop {
            let p = self.permutation(n);
            if p.is_derangement() {
                return p;
            }
        }
    }
}

/// Exactly unitary matrix: a diagonal of unimodular phases followed by
/// complex Givens rotations with Pythagorean cosine/sine pairs.
pub fn rational_unitary(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    let phases: Vec<GaussianRational> = (0..n).map(|_| rng.phase()).collect();
    let mut v = Matrix::diagonal(&phases);
    if n < 2 {
        return v;
    }
    let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    for _ in 0..n {
        let i = rng.below(n);
        let j = (i + 1 + rng.below(n - 1)) % n;
        pairs.push((i, j));
    }
    for (i, j) in pairs {
        let (a, b, c) = PYTHAGOREAN[rng.below(PYTHAGOREAN.len())];
        let (cos, sin) = if rng.below(2) == 0 { (rat(a, c), rat(b, c)) } else { (rat(b, c), rat(a, c)) };
        let sin = if rng.below(2) == 0 { sin } else { -sin };
        let phi = rng.phase();
        rotate_rows(&mut v, i, j, &cos, &sin, &phi);
    }
    v
}

/// `V ← G V` with `G` acting on rows `i, j` as `[[c, −s φ̄], [s φ, c]]`.
fn rotate_rows(v: &mut Matrix, i: usize, j: usize, c: &Rational, s: &Rational, phi: &GaussianRational) {
    let (c, s) = (real(c.clone()), real(s.clone()));
    let upper = -(&s * phi.conj());
    let lower = &s * phi;
    for k in 0..v.n() {
        let (x, y) = (v[(i, k)].clone(), v[(j, k)].clone());
        v[(i, k)] = &c * &x + &upper * &y;
        v[(j, k)] = &lower * &x + &c * &y;
    }
}

/// `M*M` for a seeded `rank × n` Gaussian-rational `M`; Hermitian PSD with
/// rank at most `rank`.
pub fn gram_psd(n: usize, rank: usize, seed: u64) -> Result<Matrix> {
    if rank == 0 || rank > n {
        return Err(Error::Precondition(format!("need 1 ≤ rank ≤ n, got rank {rank} with n {n}")));
    }
    let mut rng = ExactRng::new(seed);
    let factor: Vec<Vec<GaussianRational>> = (0..rank).map(|_| (0..n).map(|_| rng.gaussian()).collect()).collect();
    Ok(Matrix::from_fn(n, |i, j| {
        factor.iter().fold(GaussianRational::zero(), |acc, row| acc + row[i].conj() * &row[j])
    }))
}

/// Positive definite Gram matrix, certified by leading minors; singular
/// draws are rejected and redrawn from a derived seed.
pub fn pd_matrix(n: usize, seed: u64) -> Matrix {
    (0u64..)
        .map(|attempt| gram_psd(n, n, derive_seed(seed, attempt)).expect("rank n is valid"))
        .find(is_pd)
        .expect("unbounded search")
}

/// Diagonal matrix with positive entries `k/m`.
pub fn diagonal_pd(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    let d: Vec<Rational> = (0..n).map(|_| rng.positive_rational()).collect();
    Matrix::real_diagonal(&d)
}

/// Hermitian, generally indefinite.
pub fn random_hermitian(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = real(rng.rational());
        for j in i + 1..n {
            let z = rng.gaussian();
            a[(j, i)] = z.conj();
            a[(i, j)] = z;
        }
    }
    a
}

/// One rank-one PSD block `vv*` per orbit of the derangement τ (entries of
/// `v` nonzero), zero between orbits. Always tight for τ.
pub fn rank_one_orbit_family(tau: &Permutation, seed: u64) -> Result<Matrix> {
    if !tau.is_derangement() {
        return Err(Error::Precondition(format!("τ = {tau} is not a derangement")));
    }
    let mut rng = ExactRng::new(seed);
    let mut a = Matrix::zeros(tau.len());
    for orbit in tau.orbits() {
        let idx = orbit.members();
        let v: Vec<GaussianRational> = idx.iter().map(|_| rng.nonzero_gaussian()).collect();
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                a[(i, j)] = &v[r] * v[c].conj();
            }
        }
    }
    Ok(a)
}

/// Positive definite matrix with a companion partition. In block-diagonal
/// mode each diagonal block is an independent PD Gram matrix and every
/// off-diagonal block is zero.
pub fn block_pd(sizes: &[usize], seed: u64, block_diagonal: bool) -> Result<(Matrix, BlockPartition)> {
    let part = BlockPartition::new(sizes.to_vec())?;
    let n = part.dimension();
    if !block_diagonal {
        return Ok((pd_matrix(n, seed), part));
    }
    let mut a = Matrix::zeros(n);
    for (b, &size) in sizes.iter().enumerate() {
        let block = pd_matrix(size, derive_seed(seed, b as u64));
        let off = part.offset(b);
        for i in 0..size {
            for j in 0..size {
                a[(off + i, off + j)] = block[(i, j)].clone();
            }
        }
    }
    Ok((a, part))
}

/// Nonnegative spectrum of length `n`. `distinct` forces pairwise
/// distinct strictly positive values.
pub fn random_spectrum(n: usize, seed: u64, distinct: bool) -> SpectrumVector {
    let mut rng = ExactRng::new(seed);
    let mut values: Vec<Rational> = Vec::with_capacity(n);
    while values.len() < n {
        let v = if distinct { rng.positive_rational() + int(rng.below(4) as i64) } else { rng.rational().abs() * int(2) };
        if !distinct || !values.contains(&v) {
            values.push(v);
        }
    }
    SpectrumVector::new(values).expect("nonnegative by construction")
}

/// Convex combination of at most `n` permutation matrices with weights
/// `w_k / Σ w` for small positive integers `w_k`.
pub fn random_doubly_stochastic(n: usize, seed: u64) -> DoublyStochasticMatrix {
    let mut rng = ExactRng::new(seed);
    let terms = rng.range(1, n.max(1));
    let weights: Vec<i64> = (0..terms).map(|_| rng.range(1, 6) as i64).collect();
    let total: i64 = weights.iter().sum();
    let mut entries = vec![Rational::zero(); n * n];
    for w in weights {
        let p = rng.permutation(n);
        for i in 0..n {
            entries[i * n + p.apply(i)] += rat(w, total);
        }
    }
    DoublyStochasticMatrix::new(n, entries).expect("convex combination of permutations")
}

/// The 3x3 frame `[[i c, i s, 0], [s, c, 0], [0, 0, −1]]` with `c² + s² = 1`,
/// paired with `Λ = (1, 1, 1)`.
pub fn equal_spectrum_frame(c: &Rational, s: &Rational) -> Result<(SpectrumVector, Matrix)> {
    if c * c + s * s != Rational::one() {
        return Err(Error::Precondition("need c² + s² = 1".into()));
    }
    let z = Rational::zero();
    let v = Matrix::from_rows(vec![
        vec![gauss(z.clone(), c.clone()), gauss(z.clone(), s.clone()), real(z.clone())],
        vec![real(s.clone()), real(c.clone()), real(z.clone())],
        vec![real(z.clone()), real(z), real(int(-1))],
    ])?;
    let lambda = SpectrumVector::new(vec![int(1), int(1), int(1)])?;
    Ok((lambda, v))
}

/// Pads `(Λ, V)` to `(diag(Λ, 0), diag(V, 1))`.
pub fn zero_padded_frame(lambda: &SpectrumVector, v: &Matrix) -> Result<(SpectrumVector, Matrix)> {
    if lambda.len() != v.n() {
        return Err(Error::DimensionMismatch { expected: v.n(), found: lambda.len() });
    }
    let n = v.n();
    let mut values = lambda.values().to_vec();
    values.push(Rational::zero());
    let padded = Matrix::from_fn(n + 1, |i, j| match (i < n, j < n) {
        (true, true) => v[(i, j)].clone(),
        (false, false) => GaussianRational::one(),
        _ => GaussianRational::zero(),
    });
    Ok((SpectrumVector::new(values)?, padded))
}

/// Exact instance of the `(I + T)^{1/2}` construction: 2x2 blocks
/// `[[a, b], [b, a]]` with `a² + b² = 1`, whose square is `[[1, 2ab], [2ab, 1]]`.
/// Odd `n` gets a trailing 1x1 block `[1]`. Non-unitary whenever some
/// `ab ≠ 0`.
pub fn exact_sqrt_frame(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    let mut v = Matrix::zeros(n);
    for b in 0..n / 2 {
        let (x, y, z) = PYTHAGOREAN[rng.below(PYTHAGOREAN.len())];
        let (a, c) = if rng.below(2) == 0 { (rat(x, z), rat(y, z)) } else { (rat(y, z), rat(x, z)) };
        let o = 2 * b;
        v[(o, o)] = real(a.clone());
        v[(o + 1, o + 1)] = real(a);
        v[(o, o + 1)] = real(c.clone());
        v[(o + 1, o)] = real(c);
    }
    if n % 2 == 1 {
        v[(n - 1, n - 1)] = GaussianRational::one();
    }
    v
}

/// Frame corpus: rational unitaries, eg1 blocks, padded frames and
/// exact square-root frames, scrambled by random row/column permutations
/// and phases (which preserve unit rows and columns).
pub fn random_frame(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    let base = match rng.below(4) {
        0 => rational_unitary(n, rng.next_u64()),
        1 if n >= 3 => {
            let (c, s) = pythagorean_pair(&mut rng);
            let (_, eg1) = equal_spectrum_frame(&c, &s).expect("unit pair");
            direct_sum(&eg1, &rational_unitary(n - 3, rng.next_u64()))
        }
        2 if n >= 2 => {
            let inner = random_frame(n - 1, rng.next_u64());
            let lambda = SpectrumVector::new(vec![Rational::zero(); n - 1]).expect("zeros");
            zero_padded_frame(&lambda, &inner).expect("matching sizes").1
        }
        _ => exact_sqrt_frame(n, rng.next_u64()),
    };
    monomial_scramble(&base, &mut rng)
}

fn pythagorean_pair(rng: &mut ExactRng) -> (Rational, Rational) {
    let (a, b, c) = PYTHAGOREAN[rng.below(PYTHAGOREAN.len())];
    (rat(a, c), rat(b, c))
}

fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (a.n(), b.n());
    Matrix::from_fn(p + q, |i, j| match (i < p, j < p) {
        (true, true) => a[(i, j)].clone(),
        (false, false) => b[(i - p, j - p)].clone(),
        _ => GaussianRational::zero(),
    })
}

/// `D₁ P₁ V P₂ D₂` with permutation matrices `P` and unimodular diagonals `D`.
fn monomial_scramble(v: &Matrix, rng: &mut ExactRng) -> Matrix {
    let n = v.n();
    let (p1, p2) = (permutation_matrix(&rng.permutation(n)), permutation_matrix(&rng.permutation(n)));
    let d1: Vec<GaussianRational> = (0..n).map(|_| rng.phase()).collect();
    let d2: Vec<GaussianRational> = (0..n).map(|_| rng.phase()).collect();
    let mixed = &(&p1 * v) * &p2;
    Matrix::from_fn(n, |i, j| &d1[i] * &mixed[(i, j)] * &d2[j])
}

/// Monomial frame: exactly one unimodular entry per row and column.
pub fn permutation_frame(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    monomial_scramble(&Matrix::identity(n), &mut rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "psd")]
    Psd,
    #[serde(rename = "pd")]
    Pd,
    #[serde(rename = "gram")]
    Gram,
    #[serde(rename = "diagonal")]
    Diagonal,
    #[serde(rename = "hermitian")]
    Hermitian,
    #[serde(rename = "rationalUnitary")]
    RationalUnitary,
    #[serde(rename = "frame")]
    Frame,
    #[serde(rename = "eg1")]
    Eg1,
    #[serde(rename = "eg2")]
    Eg2,
    #[serde(rename = "eg3")]
    Eg3,
    #[serde(rename = "rankOneOrbit")]
    RankOneOrbit,
    #[serde(rename = "blockPD")]
    BlockPd,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Psd,
        Family::Pd,
        Family::Gram,
        Family::Diagonal,
        Family::Hermitian,
        Family::RationalUnitary,
        Family::Frame,
        Family::Eg1,
        Family::Eg2,
        Family::Eg3,
        Family::RankOneOrbit,
        Family::BlockPd,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Psd => "psd",
            Family::Pd => "pd",
            Family::Gram => "gram",
            Family::Diagonal => "diagonal",
            Family::Hermitian => "hermitian",
            Family::RationalUnitary => "rationalUnitary",
            Family::Frame => "frame",
            Family::Eg1 => "eg1",
            Family::Eg2 => "eg2",
            Family::Eg3 => "eg3",
            Family::RankOneOrbit => "rankOneOrbit",
            Family::BlockPd => "blockPD",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Case-insensitive, so `blockpd` and `blockPD` both work.
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse { what: "family", input: s.to_string() })
    }
}

/// Everything needed to reproduce one generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Gram rank for `psd`/`gram`; defaults to `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Block sizes for `blockPD`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default)]
    pub block_diagonal: bool,
    /// `(c, s)` for `eg1`, as rational strings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec { family, n, seed, rank: None, sizes: None, block_diagonal: false, params: Vec::new() }
    }

    pub fn check_bounds(&self) -> Result<()> {
        if self.family == Family::BlockPd {
            if self.sizes.is_none() {
                return Err(Error::Precondition("blockPD needs block sizes".into()));
            }
            return Ok(());
        }
        if !(1..=12).contains(&self.n) {
            return Err(Error::Precondition(format!("n = {} outside 1..12", self.n)));
        }
        if self.family == Family::RankOneOrbit && self.n < 2 {
            return Err(Error::Precondition("rankOneOrbit needs n ≥ 2".into()));
        }
        Ok(())
    }
}

/// A generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Matrix(Matrix),
    Frame { lambda: SpectrumVector, v: Matrix },
    Orbit { matrix: Matrix, tau: Permutation },
    Block { matrix: Matrix, partition: BlockPartition },
}

impl Generated {
    pub fn matrix(&self) -> &Matrix {
        match self {
            Generated::Matrix(m) => m,
            Generated::Frame { v, .. } => v,
            Generated::Orbit { matrix, .. } | Generated::Block { matrix, .. } => matrix,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    spec.check_bounds()?;
    let (n, seed) = (spec.n, spec.seed);
    let mut rng = ExactRng::new(seed);
    let out = match spec.family {
        Family::Psd | Family::Gram => Generated::Matrix(gram_psd(n, spec.rank.unwrap_or(n), seed)?),
        Family::Pd => Generated::Matrix(pd_matrix(n, seed)),
        Family::Diagonal => Generated::Matrix(diagonal_pd(n, seed)),
        Family::Hermitian => Generated::Matrix(random_hermitian(n, seed)),
        Family::RationalUnitary => Generated::Frame {
            lambda: random_spectrum(n, rng.next_u64(), false),
            v: rational_unitary(n, rng.next_u64()),
        },
        Family::Frame => Generated::Frame {
            lambda: random_spectrum(n, rng.next_u64(), false),
            v: random_frame(n, rng.next_u64()),
        },
        Family::Eg1 => {
            let (c, s) = match spec.params.as_slice() {
                [] => (rat(4, 5), rat(3, 5)),
                [c, s] => (crate::arith::parse_rational(c)?, crate::arith::parse_rational(s)?),
                _ => return Err(Error::Precondition("eg1 takes two parameters c,s".into())),
            };
            let (lambda, v) = equal_spectrum_frame(&c, &s)?;
            Generated::Frame { lambda, v }
        }
        Family::Eg2 => {
            let (lambda, v) = equal_spectrum_frame(&rat(4, 5), &rat(3, 5))?;
            let (lambda, v) = zero_padded_frame(&lambda, &v)?;
            Generated::Frame { lambda, v }
        }
        Family::Eg3 => Generated::Frame { lambda: random_spectrum(n, rng.next_u64(), false), v: exact_sqrt_frame(n, rng.next_u64()) },
        Family::RankOneOrbit => {
            let tau = rng.derangement(n);
            let matrix = rank_one_orbit_family(&tau, rng.next_u64())?;
            Generated::Orbit { matrix, tau }
        }
        Family::BlockPd => {
            let sizes = spec.sizes.as_deref().expect("checked");
            let (matrix, partition) = block_pd(sizes, seed, spec.block_diagonal)?;
            Generated::Block { matrix, partition }
        }
    };
    Ok(out)
}

/// Every derangement of the blocks of a partition (`m ≤ 9`).
pub fn block_derangements(part: &BlockPartition) -> Vec<Permutation> {
    derangements(part.len())
}

/// Nonempty proper subsets of `{0..n-1}` (Fischer splits).
pub fn proper_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
    (1u64..(1 << n) - 1).map(move |mask| IndexSet::from_mask(mask, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modulus_squared;
    use crate::inequalities::{check_frame_product, check_zy, is_psd, EqualityCase};
    use crate::majorization::{check_frame, frame_to_ds};

    /// Reference SplitMix64 step, written out independently.
    fn splitmix_reference(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    #[test]
    fn prng_matches_splitmix_vectors() {
        // Published first outputs for state 0 and 1234567.
        let mut r = SplitMix64::seed_from_u64(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        let mut r = SplitMix64::seed_from_u64(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
        for seed in [0u64, 1, 42, u64::MAX] {
            let mut r = SplitMix64::seed_from_u64(seed);
            let mut state = seed;
            for _ in 0..16 {
                assert_eq!(r.next_u64(), splitmix_reference(&mut state));
            }
        }
    }

    fn is_unitary(v: &Matrix) -> bool {
        let n = v.n();
        v.adjoint().try_mul(v).unwrap() == Matrix::identity(n) && v.try_mul(&v.adjoint()).unwrap() == Matrix::identity(n)
    }

    #[test]
    fn rational_unitaries_are_unitary() {
        assert_eq!(modulus_squared(&rational_unitary(1, 9)[(0, 0)]), int(1));
        for n in 1..=7 {
            for seed in 0..6 {
                assert!(is_unitary(&rational_unitary(n, seed)), "n={n} seed={seed}");
            }
        }
        let s = frame_to_ds(&rational_unitary(3, 42)).unwrap();
        for i in 0..3 {
            assert_eq!((0..3).map(|j| s.get(i, j).clone()).sum::<Rational>(), int(1));
            assert_eq!((0..3).map(|j| s.get(j, i).clone()).sum::<Rational>(), int(1));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for family in Family::ALL {
            let mut spec = GeneratorSpec::new(family, 4, 77);
            spec.sizes = Some(vec![2, 2]);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap(), "{family}");
        }
        assert_ne!(pd_matrix(4, 1), pd_matrix(4, 2));
    }

    #[test]
    fn gram_rank_and_psd() {
        let mut full = 0;
        for seed in 0..40 {
            let n = 2 + (seed as usize % 4);
            let rank = 1 + (seed as usize % n);
            let a = gram_psd(n, rank, seed).unwrap();
            assert!(is_psd(&a));
            let r = a.rank();
            assert!(r <= rank);
            full += usize::from(r == rank);
        }
        assert!(full >= 38, "{full}/40 generic ranks");
        let r1 = gram_psd(4, 1, 3).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| r1.columns_collinear(i, j))));
        assert!(gram_psd(3, 0, 1).is_err() && gram_psd(3, 4, 1).is_err());
    }

    #[test]
    fn pd_family_is_pd() {
        for seed in 0..10 {
            assert!(is_pd(&pd_matrix(5, seed)));
        }
    }

    #[test]
    fn equal_spectrum_frame_properties() {
        let (_, v) = equal_spectrum_frame(&rat(4, 5), &rat(3, 5)).unwrap();
        check_frame(&v).unwrap();
        let b = v.adjoint().try_mul(&v).unwrap();
        assert_eq!(b[(0, 1)], real(rat(24, 25)));
        assert_eq!(b[(1, 0)], real(rat(24, 25)));
        let vv = v.try_mul(&v.adjoint()).unwrap();
        assert_eq!(vv[(0, 1)], gauss(int(0), rat(24, 25)));
        assert_ne!(b, vv);
        let (_, v13) = equal_spectrum_frame(&rat(5, 13), &rat(12, 13)).unwrap();
        assert_eq!(v13.adjoint().try_mul(&v13).unwrap()[(0, 1)], real(rat(120, 169)));
        let (_, v0) = equal_spectrum_frame(&int(1), &int(0)).unwrap();
        assert_eq!(v0.adjoint().try_mul(&v0).unwrap(), Matrix::identity(3));
        assert!(frame_to_ds(&v0).unwrap().is_permutation());
        assert!(equal_spectrum_frame(&rat(1, 2), &rat(1, 2)).is_err());
    }

    #[test]
    fn zero_padding() {
        let (l, v) = zero_padded_frame(&SpectrumVector::new(vec![int(1)]).unwrap(), &Matrix::identity(1)).unwrap();
        assert_eq!(l.values(), &[int(1), int(0)]);
        assert_eq!(v, Matrix::identity(2));
        let (l, v) = equal_spectrum_frame(&rat(4, 5), &rat(3, 5)).unwrap();
        let (l2, v2) = zero_padded_frame(&l, &v).unwrap();
        let r = check_frame_product(&l2, &v2).unwrap();
        assert!(r.equality && r.g.is_zero());
        assert!(!frame_to_ds(&v2).unwrap().is_permutation());
    }

    #[test]
    fn frames_are_frames() {
        for n in 1..=6 {
            for seed in 0..20 {
                check_frame(&random_frame(n, seed)).unwrap();
                check_frame(&exact_sqrt_frame(n, seed)).unwrap();
                assert!(frame_to_ds(&permutation_frame(n, seed)).unwrap().is_permutation());
            }
        }
        let v = exact_sqrt_frame(4, 5);
        assert!(!is_unitary(&v));
    }

    #[test]
    fn rank_one_orbits_are_tight() {
        for tau in [
            "2,1".parse::<Permutation>().unwrap(),
            "2,3,1".parse().unwrap(),
            "2,1,4,3".parse().unwrap(),
        ] {
            let a = rank_one_orbit_family(&tau, 11).unwrap();
            let r = check_zy(&a, &tau).unwrap();
            assert!(r.equality, "{tau}");
            assert_eq!(a.determinant(), real(int(0)));
            for orbit in tau.orbits() {
                assert_eq!(a.column_rank(orbit.members()), 1);
            }
            if tau.len() > 2 {
                assert_eq!(r.case, EqualityCase::CollinearOrbits);
            }
        }
        assert!(rank_one_orbit_family(&"1,2".parse().unwrap(), 0).is_err());
    }

    #[test]
    fn block_pd_modes() {
        let (a, part) = block_pd(&[2, 2], 7, false).unwrap();
        assert!(is_pd(&a) && !a.is_block_diagonal(&part));
        let (d, part) = block_pd(&[1, 2, 3], 7, true).unwrap();
        assert!(is_pd(&d) && d.is_block_diagonal(&part));
    }

    #[test]
    fn doubly_stochastic_generator() {
        for seed in 0..20 {
            let s = random_doubly_stochastic(4, seed);
            assert_eq!(s.n(), 4);
        }
    }

    #[test]
    fn family_tags() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert_eq!("blockpd".parse::<Family>().unwrap(), Family::BlockPd);
    }
}
