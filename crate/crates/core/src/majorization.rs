//! Majorization, elementary symmetric functions, doubly stochastic
//! matrices, and the characteristic-product gap between a spectrum and the
//! diagonal of its congruence by a frame.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{compare, format_rational, modulus_squared, parse_rational, real, Rational};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Nonnegative eigenvalue list `λ_1..λ_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpectrumVector(Vec<Rational>);

impl SpectrumVector {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::Precondition(format!(
                "spectrum entry {} is negative ({})",
                i + 1,
                format_rational(v)
            )));
        }
        Ok(SpectrumVector(values))
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.0.iter().min()
    }

    pub fn product(&self) -> Rational {
        self.0.iter().fold(Rational::one(), |a, b| a * b)
    }

    pub fn is_distinct(&self) -> bool {
        let mut v = self.0.clone();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn as_diagonal(&self) -> Matrix {
        Matrix::real_diagonal(&self.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpectrumJson { lambda: self.0.iter().map(format_rational).collect() })
            .expect("spectrum serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SpectrumJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse { what: "spectrum JSON", input: e.to_string() })?;
        let values = raw.lambda.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        SpectrumVector::new(values)
    }
}

/// Wire form: `{"lambda": ["3/1","2/1","1/2"]}`.
#[derive(Debug, Serialize, Deserialize)]
struct SpectrumJson {
    lambda: Vec<String>,
}

fn sorted_descending(x: &[Rational]) -> Vec<Rational> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| compare(b, a));
    v
}

/// `x ≻ y`: descending partial sums of `x` dominate those of `y`, with equal
/// totals.
pub fn majorizes(x: &[Rational], y: &[Rational]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    let (xs, ys) = (sorted_descending(x), sorted_descending(y));
    let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if compare(&sx, &sy) == Ordering::Less {
            return Ok(false);
        }
    }
    Ok(sx == sy)
}

/// All elementary symmetric functions `e_0..e_n` of `x`.
pub fn esym_all(x: &[Rational]) -> Vec<Rational> {
    // Coefficients of ∏(1 + x_i z).
    let mut e = vec![Rational::zero(); x.len() + 1];
    e[0] = Rational::one();
    for (i, xi) in x.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let term = &e[k - 1] * xi;
            e[k] += term;
        }
    }
    e
}

pub fn esym(k: usize, x: &[Rational]) -> Result<Rational> {
    if k > x.len() {
        return Err(Error::Precondition(format!("e_{k} undefined for {} variables", x.len())));
    }
    Ok(esym_all(x).swap_remove(k))
}

/// Nonnegative square matrix with unit row and column sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublyStochasticMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl DoublyStochasticMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        if let Some(k) = entries.iter().position(Signed::is_negative) {
            return Err(Error::Precondition(format!("negative entry at ({}, {})", k / n + 1, k % n + 1)));
        }
        let s = DoublyStochasticMatrix { n, entries };
        for i in 0..n {
            let row: Rational = (0..n).map(|j| s.get(i, j).clone()).sum();
            if !row.is_one() {
                return Err(Error::Precondition(format!("row {} sums to {}", i + 1, format_rational(&row))));
            }
            let col: Rational = (0..n).map(|j| s.get(j, i).clone()).sum();
            if !col.is_one() {
                return Err(Error::Precondition(format!("column {} sums to {}", i + 1, format_rational(&col))));
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    /// Row vector times matrix, `x S`.
    pub fn left_apply(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|j| x.iter().enumerate().map(|(i, xi)| xi * self.get(i, j)).sum())
            .collect()
    }

    /// True iff every entry is 0 or 1.
    pub fn is_permutation(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }
}

pub fn is_permutation_ds(s: &DoublyStochasticMatrix) -> bool {
    s.is_permutation()
}

/// Checks that every row and column of `v` is a unit vector, i.e. the
/// diagonals of `V*V` and `VV*` are all 1.
pub fn check_frame(v: &Matrix) -> Result<()> {
    let n = v.n();
    for i in 0..n {
        let row: Rational = v.row(i).iter().map(modulus_squared).sum();
        if !row.is_one() {
            return Err(Error::NotFrame(format!("row {} has squared norm {}", i + 1, format_rational(&row))));
        }
    }
    for j in 0..n {
        let col: Rational = (0..n).map(|i| modulus_squared(&v[(i, j)])).sum();
        if !col.is_one() {
            return Err(Error::NotFrame(format!("column {} has squared norm {}", j + 1, format_rational(&col))));
        }
    }
    Ok(())
}

/// `S = (|v_ij|²)` for a frame `V`.
pub fn frame_to_ds(v: &Matrix) -> Result<DoublyStochasticMatrix> {
    check_frame(v)?;
    DoublyStochasticMatrix::new(v.n(), v.entries().iter().map(modulus_squared).collect())
}

/// `B = V*ΛV`.
pub fn frame_congruence(lambda: &SpectrumVector, v: &Matrix) -> Result<Matrix> {
    if lambda.len() != v.n() {
        return Err(Error::DimensionMismatch { expected: v.n(), found: lambda.len() });
    }
    let scaled = Matrix::from_fn(v.n(), |k, j| &v[(k, j)] * real(lambda.values()[k].clone()));
    v.adjoint().try_mul(&scaled)
}

/// Real diagonal of a Hermitian `B`.
pub(crate) fn real_diagonal(b: &Matrix) -> Vec<Rational> {
    b.diag().into_iter().map(|z| z.re).collect()
}

fn shifted_product(values: &[Rational], u: &Rational) -> Rational {
    values.iter().fold(Rational::one(), |acc, v| acc * (v - u))
}

/// Outcome of comparing `P(u) = ∏(λ_i − u)` against `Q(u) = ∏(b_ii − u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaPqReport {
    #[serde(serialize_with = "ser_rational")]
    pub p_t: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub q_t: Rational,
    /// `P(s) − P(t)`.
    #[serde(serialize_with = "ser_rational")]
    pub p_drop: Rational,
    /// `Q(s) − Q(t)`.
    #[serde(serialize_with = "ser_rational")]
    pub q_drop: Rational,
    /// `P(t) ≤ Q(t)` and `P(s) − P(t) ≤ Q(s) − Q(t)`.
    pub holds: bool,
    /// `P(s) − P(t) = Q(s) − Q(t)`.
    pub equality: bool,
    /// Whether `diag(B)` is a permutation of `λ`. `None` unless `equality`
    /// holds with `n ≥ 3`.
    pub diag_is_permutation: Option<bool>,
}

impl LemmaPqReport {
    /// `Q(t) − P(t)`.
    pub fn gap_at_t(&self) -> Rational {
        &self.q_t - &self.p_t
    }

    /// `(Q(s) − Q(t)) − (P(s) − P(t))`.
    pub fn drop_gap(&self) -> Rational {
        &self.q_drop - &self.p_drop
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn check_lemma_pq(
    lambda: &SpectrumVector,
    v: &Matrix,
    s: &Rational,
    t: &Rational,
) -> Result<LemmaPqReport> {
    check_frame(v)?;
    if s >= t {
        return Err(Error::Precondition(format!(
            "need s < t, got s = {}, t = {}",
            format_rational(s),
            format_rational(t)
        )));
    }
    if let Some(min) = lambda.min() {
        if t > min {
            return Err(Error::Precondition(format!(
                "need t ≤ min λ = {}, got {}",
                format_rational(min),
                format_rational(t)
            )));
        }
    }
    let b = frame_congruence(lambda, v)?;
    let diag = real_diagonal(&b);
    let lam = lambda.values();
    let p_t = shifted_product(lam, t);
    let q_t = shifted_product(&diag, t);
    let p_drop = shifted_product(lam, s) - &p_t;
    let q_drop = shifted_product(&diag, s) - &q_t;
    let holds = p_t <= q_t && p_drop <= q_drop;
    let equality = p_drop == q_drop;
    let diag_is_permutation = (equality && lam.len() >= 3).then(|| {
        let (mut a, mut b) = (lam.to_vec(), diag.clone());
        a.sort();
        b.sort();
        a == b
    });
    Ok(LemmaPqReport { p_t, q_t, p_drop, q_drop, holds, equality, diag_is_permutation })
}
