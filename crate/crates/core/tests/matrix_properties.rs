//! Property tests for the matrix oracle on seeded random matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use opclosure::matrix::{
    self, gaussian, op_norm, random_unitary, svd, ComplexMatrix, Mat, Tolerances,
};
use opclosure::orbit;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `m×n` matrix of rank `r` (almost surely).
fn rank_r(rng: &mut ChaCha8Rng, m: usize, n: usize, r: usize) -> Mat {
    if r == 0 {
        return Mat::zeros(m, n);
    }
    gaussian(rng, m, r) * gaussian(rng, r, n)
}

fn real_diag(v: &[f64]) -> Mat {
    DMatrix::from_fn(v.len(), v.len(), |i, j| {
        Complex64::new(if i == j { v[i] } else { 0.0 }, 0.0)
    })
}

/// Moore–Penrose inverse from the SVD, cutting at the rank threshold.
fn pinv(a: &Mat) -> Mat {
    let s = svd(a);
    let cut = 1e-9 * s.singular_values.first().copied().unwrap_or(0.0);
    let (m, n) = a.shape();
    let mut d = Mat::zeros(n, m);
    for (i, x) in s.singular_values.iter().enumerate() {
        if *x > cut {
            d[(i, i)] = Complex64::new(1.0 / x, 0.0);
        }
    }
    &s.v * d * s.u.adjoint()
}

/// Shapes and ranks, plus a seed for the entries.
fn shape() -> impl Strategy<Value = (u64, usize, usize, usize, usize)> {
    (any::<u64>(), 1usize..=6, 1usize..=6).prop_flat_map(|(seed, m, n)| {
        let k = m.min(n);
        (Just(seed), Just(m), Just(n), 0..=k, 0..=k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matrix_and_cardinal_deciders_agree((seed, m, n, ra, rb) in shape()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let a = ComplexMatrix::from(rank_r(&mut rng, m, n, ra));
        let b = ComplexMatrix::from(rank_r(&mut rng, m, n, rb));
        let numeric = matrix::closure_gg_contains_matrix(&a, &b, &tol).unwrap().holds;
        let symbolic = orbit::closure_gg_contains(&matrix::svd_indices(&a, &tol), &matrix::svd_indices(&b, &tol))
            .unwrap()
            .member;
        prop_assert_eq!(numeric, symbolic);
        prop_assert_eq!(numeric, rb <= ra);
        let d = matrix::gg_distance(&a, &b, &tol).unwrap();
        prop_assert_eq!(d > 1e-9 * b.norm(), rb > ra);
    }

    #[test]
    fn singular_values_are_one_lipschitz((seed, m, n, ra, rb) in shape()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ComplexMatrix::from(rank_r(&mut rng, m, n, ra));
        let b = ComplexMatrix::from(rank_r(&mut rng, m, n, rb));
        let gap = op_norm(&(a.as_mat() - b.as_mat()));
        for (x, y) in a.singular_values().iter().zip(b.singular_values()) {
            prop_assert!((x - y).abs() <= gap + 1e-12);
        }
        prop_assert!(matrix::uu_distance(&a, &b).unwrap() <= gap + 1e-12);
    }

    /// Small perturbations never lose rank, so `A` stays in the closure of
    /// the orbit of every nearby matrix.
    #[test]
    fn nearby_matrices_keep_a_in_their_closure((seed, m, n, r, _) in shape(), shrink in 0.01f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let a = ComplexMatrix::from(rank_r(&mut rng, m, n, r));
        let floor = if r == 0 { 1.0 } else { a.singular_values()[r - 1] };
        let e = gaussian(&mut rng, m, n);
        let e = &e * Complex64::new(shrink * floor / op_norm(&e), 0.0);
        let near = ComplexMatrix::from(a.as_mat() + e);
        prop_assert!(matrix::closure_gg_contains_matrix(&near, &a, &tol).unwrap().holds);
    }

    /// `B ∈ cl {A G}` iff `R(B) ⊆ R(A)`, and then `G_δ = A⁺B + δI` is an
    /// invertible witness with `A G_δ − B = δA`.
    #[test]
    fn right_invertible_orbits_follow_column_spaces((seed, m, n, ra, rm) in shape(), related in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let am = rank_r(&mut rng, m, n, ra);
        let bm = if related { &am * rank_r(&mut rng, n, n, rm) } else { rank_r(&mut rng, m, n, rm) };
        let projected = &am * pinv(&am) * &bm;
        let contained = op_norm(&(&projected - &bm)) <= 1e-8 * op_norm(&bm).max(1.0);
        let (a, b) = (ComplexMatrix::from(am.clone()), ComplexMatrix::from(bm.clone()));
        prop_assert_eq!(matrix::closure_g_right_contains(&a, &b, &tol).unwrap(), contained);
        if contained {
            let base = pinv(&am) * &bm;
            for delta in [1e-2, 1e-4, 1e-6] {
                let g = &base + Mat::identity(n, n) * Complex64::new(delta, 0.0);
                let residual = op_norm(&(&am * &g - &bm));
                prop_assert!(residual <= delta * op_norm(&am) + 1e-8, "delta {delta}: {residual}");
            }
        }
    }

    /// Equal right-invertible orbit closures exactly when the column spaces
    /// coincide.
    #[test]
    fn equal_right_closures_iff_equal_column_spaces((seed, m, n, r, _) in shape(), same in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let am = rank_r(&mut rng, m, n, r);
        let bm = if same { &am * random_unitary(&mut rng, n) } else { rank_r(&mut rng, m, n, r) };
        let (a, b) = (ComplexMatrix::from(am.clone()), ComplexMatrix::from(bm.clone()));
        let both = matrix::closure_g_right_contains(&a, &b, &tol).unwrap()
            && matrix::closure_g_right_contains(&b, &a, &tol).unwrap();
        let same_space = op_norm(&(&am * pinv(&am) - &bm * pinv(&bm))) <= 1e-8;
        prop_assert_eq!(both, same_space);
        if same {
            prop_assert!(both);
        }
    }

    /// `B ∈ L̄₊(A)` iff every spectral truncation `B·E([t, ∞))` is.
    #[test]
    fn lplus_is_decided_by_spectral_truncations(seed in any::<u64>(), n in 1usize..=5, ra in 0usize..=5, rb in 0usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let (ra, rb) = (ra.min(n), rb.min(n));
        let q = random_unitary(&mut rng, n);
        let da: Vec<f64> = (0..n).map(|i| if i < ra { 1.0 + i as f64 } else { 0.0 }).collect();
        let a = &q * real_diag(&da) * q.adjoint();
        let p = if seed % 2 == 0 { q.clone() } else { random_unitary(&mut rng, n) };
        let db: Vec<f64> = (0..n).map(|i| if i < rb { 0.5 + 0.75 * i as f64 } else { 0.0 }).collect();
        let b = &p * real_diag(&db) * p.adjoint();
        let member = matrix::lplus_member(&ComplexMatrix::from(a.clone()), &ComplexMatrix::from(b.clone()), &tol).unwrap();
        let truncations_member = (1..=rb).all(|k| {
            let cut: Vec<f64> = db.iter().enumerate().map(|(i, x)| if i < k { *x } else { 0.0 }).collect();
            let bt = &p * real_diag(&cut) * p.adjoint();
            matrix::lplus_member(&ComplexMatrix::from(a.clone()), &ComplexMatrix::from(bt), &tol).unwrap()
        });
        prop_assert_eq!(member, truncations_member);
    }
}
