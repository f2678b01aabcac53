//! Numeric acceptance checks on seeded random matrices.
//!
//! Every check compares against a route that does not share code with the
//! function under test: ranks known by construction, singular values from
//! the Hermitian dilation `[[0, A], [A*, 0]]`, and residuals of explicit
//! witnesses.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closure::{scaled, symbolic_gg_contains};
use super::linalg::{hermitian_eigen, min_eigenvalue, op_norm, real_diag};
use super::sample::gaussian;
use super::*;
use crate::verify::Outcome;

fn rng_for(label: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(label);
    rng.set_stream(case);
    rng
}

/// `m×n` complex matrix of rank exactly `r` (almost surely), entries O(1).
pub(crate) fn random_rank<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, r: usize) -> Mat {
    if r == 0 {
        return Mat::zeros(m, n);
    }
    gaussian(rng, m, r) * gaussian(rng, r, n) * Complex64::new(1.0 / (r as f64).sqrt(), 0.0)
}

/// Singular values from the eigenvalues of the Hermitian dilation.
pub(crate) fn dilation_singular_values(a: &Mat) -> Vec<f64> {
    let (m, n) = a.shape();
    let mut h = Mat::zeros(m + n, m + n);
    h.view_mut((0, m), (m, n)).copy_from(a);
    h.view_mut((m, 0), (n, m)).copy_from(&a.adjoint());
    let (values, _) = hermitian_eigen(&h);
    values
        .into_iter()
        .take(m.min(n))
        .map(|v| v.max(0.0))
        .collect()
}

/// `∃ c > 0` on a log grid with `cA − B ⪰ 0` up to rounding.
pub(crate) fn lplus_sweep_oracle(a: &Mat, b: &Mat) -> bool {
    (-12..=24).any(|k| {
        let c = 10f64.powf(k as f64 / 4.0);
        let d = scaled(a, c) - b;
        min_eigenvalue(&d) >= -1e-9 * (c * op_norm(a)).max(op_norm(b)).max(1.0)
    })
}

fn dims<R: Rng + ?Sized>(rng: &mut R, max: usize) -> (usize, usize) {
    (rng.random_range(1..=max), rng.random_range(1..=max))
}

pub(crate) fn gg_quantitative() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut o = Outcome::default();
    let mut approximations = 0;
    for case in 0..200 {
        let mut rng = rng_for(4, case);
        let (m, n) = dims(&mut rng, 12);
        let ra = rng.random_range(0..=m.min(n));
        let rb = rng.random_range(0..=m.min(n));
        let a = ComplexMatrix::from(random_rank(&mut rng, m, n, ra));
        let b = ComplexMatrix::from(random_rank(&mut rng, m, n, rb));

        let d = gg_distance(&a, &b, &tol).unwrap();
        let expected = dilation_singular_values(b.as_mat())
            .get(ra)
            .copied()
            .unwrap_or(0.0);
        o.check((d - expected).abs() <= 1e-10, || {
            format!("case {case}: gg_distance {d:e} vs sigma_(r+1) {expected:e}")
        });

        let sampled = sample_orbit_distance(&a, &b, Group::GG, 16, case).unwrap();
        o.check(sampled >= d - 1e-12, || {
            format!("case {case}: sampled {sampled:e} below {d:e}")
        });

        let numeric = closure_gg_contains_matrix(&a, &b, &tol).unwrap().holds;
        o.check(numeric == (rb <= ra), || {
            format!("case {case}: rank test {numeric} with ranks {ra}, {rb}")
        });
        let symbolic = symbolic_gg_contains(&a, &b, &tol).unwrap();
        o.check(numeric == symbolic, || {
            format!("case {case}: matrix and cardinal deciders differ")
        });

        if rb <= ra {
            approximations += 1;
            match gg_approximate(&a, &b, 1e-6, &tol) {
                Ok(r) => o.check(r.achieved_error <= 1e-6, || {
                    format!("case {case}: approximation error {:e}", r.achieved_error)
                }),
                Err(e) => o.check(false, || format!("case {case}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(30), || {
        format!("took {:.1} s, limit 30 s", elapsed.as_secs_f64())
    });
    o.note = Some(format!("{approximations} approximations built"));
    o
}

pub(crate) fn unitary_right() -> Outcome {
    let tol = Tolerances::default();
    let mut o = Outcome::default();
    let mut worst: f64 = 0.0;
    for case in 0..200 {
        let mut rng = rng_for(5, case);
        let (m, n) = dims(&mut rng, 8);
        let r = rng.random_range(0..=m.min(n));
        let a = ComplexMatrix::from(random_rank(&mut rng, m, n, r));
        let b = ComplexMatrix::from(random_unitary(&mut rng, m) * a.as_mat());
        let w = closure_u_right_contains(&a, &b, &tol).unwrap();
        let residual = w
            .unitary
            .as_ref()
            .map(|u| op_norm(&(u * a.as_mat() - b.as_mat())));
        worst = worst.max(residual.unwrap_or(f64::INFINITY));
        o.check(w.holds && residual.is_some_and(|x| x <= 1e-9), || {
            format!("case {case}: holds {}, residual {residual:?}", w.holds)
        });

        let perturbed =
            ComplexMatrix::from(b.as_mat() + gaussian(&mut rng, m, n) * Complex64::new(1e-3, 0.0));
        let gap = op_norm(
            &(perturbed.as_mat().adjoint() * perturbed.as_mat()
                - a.as_mat().adjoint() * a.as_mat()),
        );
        if gap > 1e-6 {
            let w = closure_u_right_contains(&a, &perturbed, &tol).unwrap();
            o.check(!w.holds, || {
                format!("case {case}: perturbed pair accepted (gap {gap:e})")
            });
        }
    }
    o.note = Some(format!("worst witness residual {worst:.1e}"));
    o
}

pub(crate) fn uu_mirsky() -> Outcome {
    let mut o = Outcome::default();
    let example = uu_distance(
        &ComplexMatrix::diag(&[3.0, 1.0]),
        &ComplexMatrix::diag(&[2.0, 2.0]),
    )
    .unwrap();
    o.check((example - 1.0).abs() <= 1e-12, || {
        format!("diag(3,1) vs diag(2,2) gave {example}")
    });
    let mut samples = 0;
    for case in 0..200 {
        let mut rng = rng_for(6, case);
        let (m, n) = dims(&mut rng, 8);
        let (ra, rb) = (
            rng.random_range(0..=m.min(n)),
            rng.random_range(0..=m.min(n)),
        );
        let a = ComplexMatrix::from(random_rank(&mut rng, m, n, ra));
        let b = ComplexMatrix::from(random_rank(&mut rng, m, n, rb));
        let d = uu_distance(&a, &b).unwrap();
        let sa = dilation_singular_values(a.as_mat());
        let sb = dilation_singular_values(b.as_mat());
        let expected = sa
            .iter()
            .zip(&sb)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        o.check((d - expected).abs() <= 1e-10, || {
            format!("case {case}: {d:e} vs {expected:e}")
        });
        let sampled = sample_orbit_distance(&a, &b, Group::UU, 50, case).unwrap();
        samples += 50;
        o.check(sampled >= d - 1e-12, || {
            format!("case {case}: sampled {sampled:e} beats {d:e}")
        });
    }
    o.note = Some(format!("{samples} unitary samples"));
    o
}

pub(crate) fn g_right_and_lplus() -> Outcome {
    let tol = Tolerances::default();
    let mut o = Outcome::default();
    for case in 0..200 {
        let mut rng = rng_for(7, case);
        let (m, n) = dims(&mut rng, 8);
        let ra = rng.random_range(0..=m.min(n));
        let a = ComplexMatrix::from(random_rank(&mut rng, m, n, ra));
        // Either B = A M (range inside R(A)), or an unrelated B, whose range
        // is inside R(A) only when A is onto (or B = 0).
        let (b, contained) = if rng.random_bool(0.5) {
            let rm = rng.random_range(0..=n);
            (a.as_mat() * random_rank(&mut rng, n, n, rm), true)
        } else {
            let rb = rng.random_range(0..=m.min(n));
            (random_rank(&mut rng, m, n, rb), rb == 0 || ra == m)
        };
        let b = ComplexMatrix::from(b);
        let got = closure_g_right_contains(&a, &b, &tol).unwrap();
        o.check(got == contained, || {
            format!("case {case}: {got} vs containment {contained} ({m}x{n}, rank A {ra})")
        });
    }
    for case in 0..500 {
        let mut rng = rng_for(71, case);
        let n = rng.random_range(1..=6);
        let r = rng.random_range(0..=n);
        // A = Q D Q* with exactly r positive eigenvalues, so √A is exact
        // rather than recovered from rounding-level eigenvalues.
        let q = random_unitary(&mut rng, n);
        let d: Vec<f64> = (0..n)
            .map(|i| {
                if i < r {
                    rng.random_range(0.1..4.0)
                } else {
                    0.0
                }
            })
            .collect();
        let root: Vec<f64> = d.iter().map(|x| x.sqrt()).collect();
        let a = &q * real_diag(&d) * q.adjoint();
        let b = if rng.random_bool(0.5) {
            let c = random_rank(&mut rng, n, n, n);
            let c = &c * c.adjoint();
            let s = &q * real_diag(&root) * q.adjoint();
            &s * c * &s
        } else {
            let ry = rng.random_range(0..=n);
            let y = random_rank(&mut rng, n, n, ry);
            &y * y.adjoint()
        };
        let got = lplus_member(
            &ComplexMatrix::from(a.clone()),
            &ComplexMatrix::from(b.clone()),
            &tol,
        )
        .unwrap();
        let oracle = lplus_sweep_oracle(&a, &b);
        o.check(got == oracle, || {
            format!("psd case {case}: {got} vs sweep {oracle} (n {n}, rank A {r})")
        });
    }
    o
}

pub(crate) fn rank_semicontinuity() -> Outcome {
    let tol = Tolerances::default();
    let mut o = Outcome::default();
    for case in 0..1000 {
        let mut rng = rng_for(8, case);
        let (m, n) = dims(&mut rng, 6);
        let r = rng.random_range(0..=m.min(n));
        let a = ComplexMatrix::from(random_rank(&mut rng, m, n, r));
        let sv = a.singular_values();
        let floor = if r == 0 { 1.0 } else { sv[r - 1] };
        // A_k → A with ‖A_k − A‖ = floor·10^-k: rank cannot drop below rank A.
        for k in 1..=6 {
            let e = gaussian(&mut rng, m, n);
            let e = scaled(&e, floor * 10f64.powi(-k) / op_norm(&e));
            let ak = ComplexMatrix::from(a.as_mat() + e);
            let rk = rank_reading(ak.as_mat(), &tol).rank;
            o.check(rk >= r, || {
                format!("case {case}, step {k}: rank {rk} below limit rank {r}")
            });
            // Small perturbations keep A in the closure of their orbit.
            o.check(
                closure_gg_contains_matrix(&ak, &a, &tol).unwrap().holds,
                || format!("case {case}, step {k}: A left the closure"),
            );
        }
        if r < m.min(n) {
            let b = ComplexMatrix::from(random_rank(&mut rng, m, n, r + 1));
            let d = gg_distance(&a, &b, &tol).unwrap();
            o.check(d > 0.0, || {
                format!("case {case}: higher-rank B at distance 0")
            });
        }
    }
    o
}

pub(crate) fn matrix_round_trip() -> Outcome {
    let mut o = Outcome::default();
    for case in 0..1000 {
        let mut rng = rng_for(9, case);
        let (m, n) = dims(&mut rng, 5);
        let mut x = gaussian(&mut rng, m, n);
        // Exercise exact zeros and purely real or imaginary entries.
        for z in x.iter_mut() {
            match rng.random_range(0..4) {
                0 => *z = Complex64::new(0.0, 0.0),
                1 => z.im = 0.0,
                2 => z.re = 0.0,
                _ => {}
            }
        }
        let a = ComplexMatrix::from(x);
        let json = a.to_json();
        let text = a.to_string();
        let ok = ComplexMatrix::parse(&json).is_ok_and(|b| b == a && b.to_json() == json)
            && ComplexMatrix::parse(&text).is_ok_and(|b| b == a);
        o.check(ok, || format!("case {case}: {json}"));
    }
    o
}
