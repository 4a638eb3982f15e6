#![allow(dead_code)]

use detineq_core::arith::{real, GaussianRational, Rational};
use detineq_core::generators::ExactRng;
use detineq_core::Matrix;
use num_traits::{One, Zero};

/// Laplace expansion along the first row; independent of elimination.
pub fn cofactor_determinant(a: &Matrix) -> GaussianRational {
    let idx: Vec<usize> = (0..a.n()).collect();
    cofactor_rec(a, &idx, &idx)
}

fn cofactor_rec(a: &Matrix, rows: &[usize], cols: &[usize]) -> GaussianRational {
    if rows.is_empty() {
        return GaussianRational::one();
    }
    let r = rows[0];
    let mut acc = GaussianRational::zero();
    for (k, &c) in cols.iter().enumerate() {
        if a[(r, c)].is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &a[(r, c)] * cofactor_rec(a, &rows[1..], &sub_cols);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn random_matrix(n: usize, seed: u64) -> Matrix {
    let mut rng = ExactRng::new(seed);
    Matrix::from_fn(n, |_, _| rng.gaussian())
}

pub fn random_real_vector(n: usize, rng: &mut ExactRng) -> Vec<Rational> {
    (0..n).map(|_| rng.rational()).collect()
}

pub fn rank_one(v: &[GaussianRational]) -> Matrix {
    Matrix::from_fn(v.len(), |i, j| &v[i] * v[j].conj())
}

pub fn as_real(r: &Rational) -> GaussianRational {
    real(r.clone())
}
