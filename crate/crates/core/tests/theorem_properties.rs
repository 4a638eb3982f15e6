use detineq_core::arith::{int, modulus_squared, rat, Rational};
use detineq_core::eigen::to_f64;
use detineq_core::generators::{
    block_pd, derive_seed, gram_psd, equal_spectrum_frame, pd_matrix, random_doubly_stochastic, random_frame,
    random_hermitian, random_spectrum, rank_one_orbit_family, rational_unitary, ExactRng,
};
use detineq_core::inequalities::{
    check_block_zy, check_hadamard, check_hadamard_product_form, check_thompson, check_zy, is_f_matrix, is_psd,
    orbit_rank_condition, PreparedMatrix,
};
use detineq_core::majorization::{check_lemma_pq, esym, esym_all, frame_congruence, frame_to_ds};
use detineq_core::perm::{derangements, non_identity_permutations};
use detineq_core::{Matrix, SpectrumVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut v = v.to_vec();
    v.sort();
    v
}

#[test]
fn frame_diagonal_is_shifted_ds_image() {
    for seed in 0..60u64 {
        let n = 2 + seed as usize % 5;
        let v = random_frame(n, seed);
        let lambda = random_spectrum(n, seed, false);
        let s = frame_to_ds(&v).unwrap();
        let b = frame_congruence(&lambda, &v).unwrap();
        let t = rat(-1, 3);
        let shifted: Vec<Rational> = lambda.values().iter().map(|l| l - &t).collect();
        let image = s.left_apply(&shifted);
        for i in 0..n {
            assert!(b[(i, i)].im.is_zero());
            assert_eq!(&b[(i, i)].re - &t, image[i], "seed={seed} i={i}");
        }
    }
}

#[test]
fn elementary_symmetric_functions_grow_under_averaging() {
    let mut rng = ExactRng::new(77);
    for trial in 0..200u64 {
        let n = 2 + trial as usize % 6;
        let x: Vec<Rational> = (0..n).map(|_| rng.positive_rational()).collect();
        let s = random_doubly_stochastic(n, derive_seed(77, trial));
        let y = s.left_apply(&x);
        let (ex, ey) = (esym_all(&x), esym_all(&y));
        for k in 0..=n {
            assert!(ex[k] <= ey[k], "k={k} x={x:?}");
        }
        if sorted(&x) != sorted(&y) {
            assert!(ex[2] < ey[2]);
        }
    }
}

#[test]
fn lemma_drop_gap_matches_expansion() {
    // Q(s) − P(s) = Σ_k [e_k(b − t) − e_k(λ − t)] (t − s)^{n−k}.
    for seed in 0..80u64 {
        let n = 2 + seed as usize % 5;
        let v = if seed % 2 == 0 {
            rational_unitary(n, seed)
        } else {
            random_frame(n, seed)
        };
        let lambda = random_spectrum(n, seed, seed % 3 == 0);
        let t = lambda.min().unwrap().clone() - rat(seed as i64 % 3, 4);
        let s = &t - rat(1 + seed as i64 % 5, 2);
        let report = check_lemma_pq(&lambda, &v, &s, &t).unwrap();
        assert!(report.holds);
        let b = frame_congruence(&lambda, &v).unwrap();
        let bt: Vec<Rational> = (0..n).map(|i| &b[(i, i)].re - &t).collect();
        let lt: Vec<Rational> = lambda.values().iter().map(|l| l - &t).collect();
        let step = &t - &s;
        let expansion: Rational = (0..n)
            .map(|k| (esym(k, &bt).unwrap() - esym(k, &lt).unwrap()) * num_traits::pow(step.clone(), n - k))
            .sum();
        assert_eq!(report.drop_gap(), expansion, "seed={seed}");
        assert!(report.gap_at_t() >= Rational::zero());
    }
}

#[test]
fn permutation_shaped_frames_are_tight_in_lemma() {
    let lambda = SpectrumVector::new(vec![int(5), int(3), int(2)]).unwrap();
    let v = detineq_core::matrix::permutation_matrix(&"3,1,2".parse().unwrap());
    let r = check_lemma_pq(&lambda, &v, &int(0), &int(1)).unwrap();
    assert!(r.holds && r.equality);
    assert_eq!(r.diag_is_permutation, Some(true));
}

#[test]
fn eg1_family_is_tight_for_frame_product() {
    for (c, s) in [(rat(4, 5), rat(3, 5)), (rat(5, 13), rat(12, 13)), (rat(8, 17), rat(15, 17))] {
        let (lambda, v) = equal_spectrum_frame(&c, &s).unwrap();
        let r = detineq_core::inequalities::check_frame_product(&lambda, &v).unwrap();
        assert!(r.equality);
        assert!(!frame_to_ds(&v).unwrap().is_permutation());
    }
}

#[test]
fn psd_and_f_matrix_agree_on_hermitian_inputs() {
    for seed in 0..150u64 {
        let n = 1 + seed as usize % 5;
        let a = match seed % 3 {
            0 => random_hermitian(n, seed),
            1 => gram_psd(n, 1 + seed as usize % n, seed).unwrap(),
            _ => pd_matrix(n, seed),
        };
        assert_eq!(is_psd(&a), is_f_matrix(&a), "seed={seed}\n{a}");
    }
}

#[test]
fn orbit_rank_matches_pairwise_collinearity() {
    for seed in 0..60u64 {
        let n = 2 + seed as usize % 4;
        for tau in derangements(n) {
            let a = match seed % 3 {
                0 => rank_one_orbit_family(&tau, seed).unwrap(),
                1 => gram_psd(n, 1, seed).unwrap(),
                _ => gram_psd(n, 2, seed).unwrap(),
            };
            let pairwise = (0..n).all(|i| a.columns_collinear(i, tau.apply(i)));
            assert_eq!(orbit_rank_condition(&a, &tau).unwrap(), pairwise, "τ={tau}\n{a}");
        }
    }
}

#[test]
fn product_form_agrees_with_zy_on_derangements() {
    for seed in 0..40u64 {
        let n = 2 + seed as usize % 4;
        let prepared = PreparedMatrix::new(gram_psd(n, 1 + seed as usize % n, seed).unwrap()).unwrap();
        for tau in derangements(n) {
            let zy = prepared.check_zy(&tau).unwrap();
            let hp = prepared.check_hadamard_product_form(&tau).unwrap();
            assert_eq!((zy.holds, zy.equality), (hp.holds, hp.equality), "τ={tau}");
            assert_eq!(zy.g, hp.g);
        }
    }
}

#[test]
fn positive_cross_term_makes_hadamard_strict() {
    for seed in 0..40u64 {
        let n = 2 + seed as usize % 4;
        let a = pd_matrix(n, seed);
        let h = check_hadamard(&a).unwrap();
        for sigma in non_identity_permutations(n) {
            let r = check_zy(&a, &sigma).unwrap();
            assert!(r.holds);
            if r.p > Rational::zero() {
                assert!(h.g > Rational::zero());
            }
        }
    }
}

#[test]
fn block_zy_tracks_zy_on_block_determinants() {
    for seed in 0..40u64 {
        let sizes: &[usize] = if seed % 2 == 0 { &[2, 2] } else { &[2, 2, 2] };
        let (a, part) = block_pd(sizes, seed, seed % 5 == 0).unwrap();
        let d = a.block_determinant_matrix(&part).unwrap();
        let det_a = a.determinant().re;
        let det_d = d.determinant().re;
        let thompson = check_thompson(&a, &part).unwrap();
        assert!(thompson.holds);
        assert_eq!(thompson.g, &det_d - &det_a);
        for tau in derangements(part.len()) {
            let block = check_block_zy(&a, &part, &tau).unwrap();
            let scalar = check_zy(&d, &tau).unwrap();
            assert_eq!(block.holds, scalar.holds);
            assert_eq!(block.p, scalar.p);
            assert_eq!(block.g, &scalar.g + (&det_d - &det_a));
        }
    }
}

#[test]
fn unequal_blocks_have_no_block_determinant_matrix() {
    let (a, part) = block_pd(&[3, 2], 1, false).unwrap();
    assert!(check_thompson(&a, &part).is_err());
    assert!(check_block_zy(&a, &part, &"2,1".parse().unwrap()).is_err());
}

/// Partial-pivot LU in double precision.
fn float_det(a: &Matrix) -> Complex64 {
    let n = a.n();
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| Complex64::new(to_f64(&a[(i, j)].re), to_f64(&a[(i, j)].im))).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| m[x][k].norm().total_cmp(&m[y][k].norm())).unwrap();
        if m[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let x = m[k][j];
                m[i][j] -= f * x;
            }
        }
    }
    det
}

#[test]
fn zy_agrees_with_double_precision_evaluation() {
    for seed in 0..60u64 {
        let n = 3 + seed as usize % 4;
        let a = pd_matrix(n, seed);
        let prepared = PreparedMatrix::new(a.clone()).unwrap();
        let det = float_det(&a);
        assert!((det.re - to_f64(prepared.determinant())).abs() <= 1e-9 * det.norm().max(1.0));
        let diag: f64 = (0..n).map(|i| to_f64(&a[(i, i)].re)).product();
        let mut rng = ExactRng::new(seed);
        for _ in 0..10 {
            let sigma = rng.non_identity_permutation(n);
            let r = prepared.check_zy(&sigma).unwrap();
            let p: f64 = (0..n)
                .map(|i| {
                    let j = sigma.apply(i);
                    to_f64(&a[(i, j)].re) * to_f64(&a[(j, i)].re) - to_f64(&a[(i, j)].im) * to_f64(&a[(j, i)].im)
                })
                .product();
            let slack = diag - det.re - p.max(0.0).sqrt();
            let scale = diag.abs().max(1.0);
            assert!((to_f64(&r.g) - (diag - det.re)).abs() <= 1e-9 * scale);
            if slack.abs() > 1e-9 * scale {
                assert_eq!(r.holds, slack > 0.0, "σ={sigma}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn two_by_two_psd_is_always_tight(seed in any::<u64>(), rank in 1usize..=2) {
        let a = gram_psd(2, rank, seed).unwrap();
        let r = check_zy(&a, &"2,1".parse().unwrap()).unwrap();
        prop_assert!(r.equality);
        prop_assert_eq!(r.g_squared(), r.p);
    }

    #[test]
    fn rank_one_orbits_are_tight(seed in any::<u64>(), n in 3usize..=5) {
        let mut rng = ExactRng::new(seed);
        let tau = rng.derangement(n);
        let a = rank_one_orbit_family(&tau, seed).unwrap();
        prop_assert!(check_zy(&a, &tau).unwrap().equality);
        prop_assert!(check_hadamard_product_form(&a, &tau).unwrap().equality);
        prop_assert!(orbit_rank_condition(&a, &tau).unwrap());
    }

    #[test]
    fn zy_holds_on_pd_matrices(seed in any::<u64>(), n in 2usize..=5) {
        let prepared = PreparedMatrix::new(pd_matrix(n, seed)).unwrap();
        let mut rng = ExactRng::new(seed ^ 1);
        for _ in 0..8 {
            let sigma = rng.non_identity_permutation(n);
            let r = prepared.check_zy(&sigma).unwrap();
            prop_assert!(r.holds);
            prop_assert!(r.g >= Rational::zero() && r.g_squared() >= r.p);
        }
    }

    #[test]
    fn frame_product_holds(seed in any::<u64>(), n in 2usize..=6) {
        let v = random_frame(n, seed);
        let lambda = random_spectrum(n, seed, false);
        let r = detineq_core::inequalities::check_frame_product(&lambda, &v).unwrap();
        prop_assert!(r.holds);
    }

    #[test]
    fn rational_unitaries_are_exact(seed in any::<u64>(), n in 1usize..=6) {
        let u = rational_unitary(n, seed);
        prop_assert_eq!(u.adjoint().try_mul(&u).unwrap(), Matrix::identity(n));
        prop_assert_eq!(u.try_mul(&u.adjoint()).unwrap(), Matrix::identity(n));
        prop_assert_eq!(modulus_squared(&u.determinant()), Rational::one());
    }

    #[test]
    fn determinant_conjugation_invariant(seed in any::<u64>(), n in 1usize..=5) {
        let a = random_hermitian(n, seed);
        let u = rational_unitary(n, seed ^ 0x55);
        let b = u.adjoint().try_mul(&a).unwrap().try_mul(&u).unwrap();
        prop_assert_eq!(b.determinant(), a.determinant());
        prop_assert_eq!(b.trace(), a.trace());
        prop_assert!(b.is_hermitian());
    }
}
