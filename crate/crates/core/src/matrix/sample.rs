//! Seeded random group elements and empirical orbit distances.
//!
//! Invertibles are `I + s·E` with `E` complex Gaussian of entry variance
//! `1/n` and `s` uniform in `[0, 2]`, rejected when the condition number
//! exceeds `1e6`. Unitaries are the `Q` factor of a complex Gaussian matrix
//! with the phases of `diag(R)` moved into `Q` (Haar distributed).

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::linalg::{inverse, op_norm, singular_values};
use super::{same_shape, ComplexMatrix, Group, Mat};
use crate::error::{Error, Result};

const CONDITION_CAP: f64 = 1e6;

/// Work is split into this many independently seeded chunks, so the result
/// does not depend on the number of threads.
const CHUNKS: u64 = 8;

/// Matrix of independent standard complex Gaussians.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mat {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Mat {
    let qr = gaussian(rng, n, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Mat {
    loop {
        let s: f64 = rng.random_range(0.0..2.0);
        let e = gaussian(rng, n, n) * Complex64::new(s / (n as f64).sqrt(), 0.0);
        let g = Mat::identity(n, n) + e;
        let sv = singular_values(&g);
        if sv[n - 1] > 0.0 && sv[0] / sv[n - 1] <= CONDITION_CAP {
            return g;
        }
    }
}

/// A group element acting on `A`: left and right factors (identity where the
/// group does not act).
struct Element {
    left: Mat,
    right: Mat,
}

impl Element {
    fn random(rng: &mut ChaCha8Rng, group: Group, m: usize, n: usize) -> Self {
        let (left, right) = match group {
            Group::GG => (random_invertible(rng, m), random_invertible(rng, n)),
            Group::URight => (random_unitary(rng, m), Mat::identity(n, n)),
            Group::ULeft => (Mat::identity(m, m), random_unitary(rng, n)),
            Group::GRight => (Mat::identity(m, m), random_invertible(rng, n)),
            Group::UU => (random_unitary(rng, m), random_unitary(rng, n)),
        };
        Element { left, right }
    }

    /// A nearby element: multiply by a group element close to the identity.
    fn perturb(&self, rng: &mut ChaCha8Rng, group: Group, step: f64) -> Self {
        let near = |rng: &mut ChaCha8Rng, n: usize, unitary: bool| {
            let e = gaussian(rng, n, n) * Complex64::new(step, 0.0);
            if unitary {
                // Cayley transform of the skew-Hermitian part.
                let k = (&e - e.adjoint()) * Complex64::new(0.5, 0.0);
                let id = Mat::identity(n, n);
                inverse(&(&id - &k)).map_or(id.clone(), |inv| inv * (&id + &k))
            } else {
                Mat::identity(n, n) + e
            }
        };
        let (m, n) = (self.left.nrows(), self.right.nrows());
        let (left, right) = match group {
            Group::GG => (
                &self.left * near(rng, m, false),
                near(rng, n, false) * &self.right,
            ),
            Group::URight => (&self.left * near(rng, m, true), self.right.clone()),
            Group::ULeft => (self.left.clone(), near(rng, n, true) * &self.right),
            Group::GRight => (self.left.clone(), near(rng, n, false) * &self.right),
            Group::UU => (
                &self.left * near(rng, m, true),
                near(rng, n, true) * &self.right,
            ),
        };
        Element { left, right }
    }

    fn is_admissible(&self, group: Group) -> bool {
        let ok = |g: &Mat| {
            let sv = singular_values(g);
            let last = sv[sv.len() - 1];
            last > 0.0 && sv[0] / last <= CONDITION_CAP
        };
        match group {
            Group::GG => ok(&self.left) && ok(&self.right),
            Group::GRight => ok(&self.right),
            _ => true,
        }
    }

    fn distance(&self, a: &Mat, b: &Mat) -> f64 {
        op_norm(&(&self.left * a * &self.right - b))
    }
}

/// Smallest `‖g·A·h − B‖` found over `n_samples` seeded group elements, an
/// upper bound on the distance from `B` to the orbit of `A`.
///
/// Half of each chunk's budget draws fresh elements; the other half
/// refines the best one found so far by small multiplicative steps, shrinking
/// the step on failure.
pub fn sample_orbit_distance(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    group: Group,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    same_shape(a, b)?;
    if n_samples == 0 {
        return Err(Error::validation("samples", "need at least one sample"));
    }
    let (m, n) = a.shape();
    let (am, bm) = (a.as_mat(), b.as_mat());
    let best = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let budget = n_samples / CHUNKS as usize
                + usize::from((chunk as usize) < n_samples % CHUNKS as usize);
            if budget == 0 {
                return f64::INFINITY;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let fresh = budget.div_ceil(2);
            let mut best = Element::random(&mut rng, group, m, n);
            let mut best_d = best.distance(am, bm);
            for _ in 1..fresh {
                let e = Element::random(&mut rng, group, m, n);
                let d = e.distance(am, bm);
                if d < best_d {
                    best = e;
                    best_d = d;
                }
            }
            let mut step = 0.1;
            for _ in fresh..budget {
                let e = best.perturb(&mut rng, group, step);
                if !e.is_admissible(group) {
                    step *= 0.5;
                    continue;
                }
                let d = e.distance(am, bm);
                if d < best_d {
                    best = e;
                    best_d = d;
                    step *= 1.5;
                } else {
                    step *= 0.8;
                }
            }
            best_d
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}
