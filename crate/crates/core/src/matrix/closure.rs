//! Orbit and orbit-closure membership for matrices, and the closed-form
//! distances.

use num_complex::Complex64;

use super::linalg::{self, complete, min_eigenvalue, op_norm, svd};
use super::{same_shape, ComplexMatrix, Group, Mat, Tolerances};
use crate::cardinal::Cardinal;
use crate::descriptor::OperatorDescriptor;
use crate::error::{Error, Result};
use crate::orbit;
use crate::profile::RangeProfile;

/// A rank read off singular values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReading {
    pub rank: usize,
    /// Some singular value lies within a factor 10 of the threshold.
    pub marginal: bool,
}

pub fn rank_reading(m: &Mat, tol: &Tolerances) -> RankReading {
    rank_of(&linalg::singular_values(m), tol)
}

fn rank_of(sv: &[f64], tol: &Tolerances) -> RankReading {
    let threshold = tol.rank_tol * sv.first().copied().unwrap_or(0.0);
    RankReading {
        rank: sv.iter().filter(|s| **s > threshold).count(),
        marginal: threshold > 0.0
            && sv
                .iter()
                .any(|s| *s >= threshold / 10.0 && *s <= threshold * 10.0),
    }
}

/// A yes/no answer that depended on a rank decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub marginal: bool,
}

/// Descriptor of a matrix: closed range of dimension `rank`.
pub fn svd_indices(m: &ComplexMatrix, tol: &Tolerances) -> OperatorDescriptor {
    let r = rank_reading(m.as_mat(), tol).rank;
    let (rows, cols) = m.shape();
    OperatorDescriptor::new(
        Cardinal::finite((cols - r) as u64),
        Cardinal::finite((rows - r) as u64),
        RangeProfile::closed(Cardinal::finite(r as u64)),
    )
}

#[derive(Debug, Clone)]
pub struct Truncation {
    /// Orthonormal columns spanning the right singular vectors with `σ ≥ eps`.
    pub basis: Mat,
    /// `‖M − M P_V‖`.
    pub error: f64,
}

/// The spectral subspace `E([eps, ∞))` of `|M|` and how well `M` is
/// approximated by its compression to it.
pub fn spectral_truncate(m: &ComplexMatrix, eps: f64) -> Result<Truncation> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::validation(
            "eps",
            format!("must be positive, got {eps}"),
        ));
    }
    let s = svd(m.as_mat());
    let k = s.singular_values.iter().filter(|x| **x >= eps).count();
    let basis = s.v.columns(0, k).into_owned();
    let p = &basis * basis.adjoint();
    let error = op_norm(&(m.as_mat() - m.as_mat() * p));
    Ok(Truncation { basis, error })
}

/// `B ∈ cl {G A L⁻¹}` in finite dimensions: `rank B ≤ rank A`.
pub fn closure_gg_contains_matrix(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<Decision> {
    same_shape(a, b)?;
    let (ra, rb) = (rank_reading(a.as_mat(), tol), rank_reading(b.as_mat(), tol));
    Ok(Decision {
        holds: rb.rank <= ra.rank,
        marginal: ra.marginal || rb.marginal,
    })
}

/// `dist(B, cl {G A L⁻¹}) = σ_{r+1}(B)` with `r = rank A`.
pub fn gg_distance(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    same_shape(a, b)?;
    let r = rank_reading(a.as_mat(), tol).rank;
    Ok(b.singular_values().get(r).copied().unwrap_or(0.0))
}

/// Result of a unitary-orbit closure test with the constructed witness.
#[derive(Debug, Clone)]
pub struct UnitaryWitness {
    pub holds: bool,
    /// A unitary realising the membership: `U A = B` for the left action,
    /// `A U = B` for the right action.
    pub unitary: Option<Mat>,
    /// Residual of the witness equation.
    pub residual: Option<f64>,
}

/// `B ∈ cl {U A}`: `B*B = A*A` and the cokernels have equal dimension.
pub fn closure_u_right_contains(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<UnitaryWitness> {
    same_shape(a, b)?;
    let (am, bm) = (a.as_mat(), b.as_mat());
    let gram_gap = op_norm(&(bm.adjoint() * bm - am.adjoint() * am));
    let same_codefect = svd_indices(a, tol).codefect() == svd_indices(b, tol).codefect();
    if gram_gap > tol.match_tol || !same_codefect {
        return Ok(UnitaryWitness {
            holds: false,
            unitary: None,
            residual: None,
        });
    }
    // A = Ua Σ Va*. On R(A), U sends Ua e_j to B Va e_j / σ_j, which are
    // orthonormal because B*B = A*A; on R(A)⊥ it is any unitary onto R(B)⊥.
    let s = svd(am);
    let r = rank_of(&s.singular_values, tol).rank;
    let inv_sigma: Vec<f64> = s.singular_values[..r].iter().map(|x| 1.0 / x).collect();
    let images = bm * s.v.columns(0, r) * linalg::real_diag(&inv_sigma);
    let images = orthonormalize(&images);
    let target = complete(&images);
    let source = &s.u;
    let u = target * source.adjoint();
    let residual = op_norm(&(&u * am - bm));
    Ok(UnitaryWitness {
        holds: true,
        unitary: Some(u),
        residual: Some(residual),
    })
}

/// Nearest matrix with orthonormal columns (polar factor of a tall matrix).
fn orthonormalize(m: &Mat) -> Mat {
    let (rows, k) = m.shape();
    if k == 0 {
        return Mat::zeros(rows, 0);
    }
    let s = svd(m);
    s.u.columns(0, k) * s.v.adjoint()
}

/// `B ∈ cl {A U}`: `BB* = AA*` and the kernels have equal dimension.
pub fn closure_u_left_contains(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<UnitaryWitness> {
    let w = closure_u_right_contains(&a.adjoint(), &b.adjoint(), tol)?;
    Ok(UnitaryWitness {
        unitary: w.unitary.map(|u| u.adjoint()),
        ..w
    })
}

/// `B ∈ cl {U A V}`: equal singular values.
pub fn closure_uu_contains(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(uu_distance(a, b)? <= tol.match_tol)
}

/// `min ‖U A V − B‖ = max_i |σ_i(A) − σ_i(B)|`.
pub fn uu_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_shape(a, b)?;
    Ok(a.singular_values()
        .iter()
        .zip(b.singular_values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

fn check_psd(name: &str, m: &Mat, tol: &Tolerances) -> Result<()> {
    if !m.is_square() {
        return Err(Error::precondition(format!("{name} is not square")));
    }
    let scale = op_norm(m).max(1.0);
    let asym = op_norm(&(m - m.adjoint()));
    if asym > tol.match_tol * scale || min_eigenvalue(m) < -tol.match_tol * scale {
        return Err(Error::precondition(format!(
            "{name} is not positive semidefinite"
        )));
    }
    Ok(())
}

/// `B ∈ L̄₊(A)` for positive semidefinite `A`, `B`: in finite dimensions,
/// `R(B) ⊆ R(A)`.
pub fn lplus_member(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    same_shape(a, b)?;
    let (am, bm) = (a.as_mat(), b.as_mat());
    check_psd("A", am, tol)?;
    check_psd("B", bm, tol)?;
    let (values, vectors) = linalg::hermitian_eigen(am);
    let threshold = tol.rank_tol * values.first().copied().unwrap_or(0.0).max(0.0);
    let r = values.iter().filter(|v| **v > threshold).count();
    let q = vectors.columns(0, r);
    let n = am.nrows();
    let off = Mat::identity(n, n) - q * q.adjoint();
    let limit = tol.match_tol * op_norm(bm).max(1.0);
    Ok(op_norm(&(&off * bm * &off)) <= limit && op_norm(&(&off * bm)) <= limit)
}

/// `B ∈ cl {A G}`: `BB* ∈ L̄₊(AA*)` together with
/// `ι_i(B) = ι_i(A) + ι_i(B*|R(A))`.
pub fn closure_g_right_contains(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<bool> {
    same_shape(a, b)?;
    let (am, bm) = (a.as_mat(), b.as_mat());
    let aa = ComplexMatrix::from(am * am.adjoint());
    let bb = ComplexMatrix::from(bm * bm.adjoint());
    if !lplus_member(&aa, &bb, tol)? {
        return Ok(false);
    }
    let n = am.ncols();
    let ra = rank_reading(am, tol).rank;
    let rb = rank_reading(bm, tol).rank;
    // B* restricted to R(A), as a map from an ra-dimensional space.
    let qa = linalg::range_basis(am, tol.rank_tol * op_norm(am));
    let restricted_rank = rank_reading(&(bm.adjoint() * qa), tol).rank;
    Ok(n - rb == (n - ra) + (ra - restricted_rank))
}

/// Exact orbit membership in finite dimensions.
pub fn orbit_member_exact(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    group: Group,
    tol: &Tolerances,
) -> Result<bool> {
    same_shape(a, b)?;
    let (am, bm) = (a.as_mat(), b.as_mat());
    let close = |x: Mat, y: Mat| op_norm(&(x - y)) <= tol.match_tol;
    Ok(match group {
        Group::GG => rank_reading(am, tol).rank == rank_reading(bm, tol).rank,
        Group::URight => close(bm.adjoint() * bm, am.adjoint() * am),
        Group::ULeft => close(bm * bm.adjoint(), am * am.adjoint()),
        Group::GRight => {
            let mut joint = Mat::zeros(am.nrows(), 2 * am.ncols());
            joint.columns_mut(0, am.ncols()).copy_from(am);
            joint.columns_mut(am.ncols(), am.ncols()).copy_from(bm);
            let (ra, rb) = (rank_reading(am, tol).rank, rank_reading(bm, tol).rank);
            ra == rb && rank_reading(&joint, tol).rank == ra
        }
        Group::UU => uu_distance(a, b)? <= tol.match_tol,
    })
}

/// The cardinal closure decider applied to the matrices' descriptors.
pub fn symbolic_gg_contains(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<bool> {
    same_shape(a, b)?;
    Ok(orbit::closure_gg_contains(&svd_indices(a, tol), &svd_indices(b, tol))?.member)
}

pub(super) fn scaled(m: &Mat, s: f64) -> Mat {
    m * Complex64::new(s, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn d(v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::diag(v)
    }

    #[test]
    fn indices_examples() {
        let x = svd_indices(&d(&[1.0, 0.5, 0.0]), &tol());
        assert_eq!(
            x.to_json(),
            r#"{"nullity":"1","codefect":"1","profile":{"blocks":[{"value":"2","count":1}],"tail":{"kind":"zero"}},"dim_H":"3","dim_K":"3"}"#
        );
        let z = svd_indices(&ComplexMatrix::zeros(2, 3), &tol());
        assert_eq!(
            (z.nullity().clone(), z.codefect().clone()),
            (Cardinal::finite(3), Cardinal::finite(2))
        );
        assert!(z.profile().blocks().is_empty());
    }

    #[test]
    fn truncation_examples() {
        let t = spectral_truncate(&d(&[3.0, 0.1]), 1.0).unwrap();
        assert_eq!(t.basis.ncols(), 1);
        assert!((t.basis[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert!((t.error - 0.1).abs() < 1e-12);
        let t = spectral_truncate(&d(&[2.0, 1.0]), 0.5).unwrap();
        assert_eq!((t.basis.ncols(), t.error), (2, 0.0));
        let t = spectral_truncate(&d(&[1.0, 0.5, 0.25]), 0.4).unwrap();
        assert_eq!(t.basis.ncols(), 2);
        assert!((t.error - 0.25).abs() < 1e-12);
        assert!(spectral_truncate(&d(&[1.0]), 0.0).is_err());
    }

    #[test]
    fn gg_examples() {
        let a = d(&[1.0, 0.0, 0.0]);
        let b = d(&[2.0, 1.0, 0.5]);
        assert!(!closure_gg_contains_matrix(&a, &b, &tol()).unwrap().holds);
        assert!(closure_gg_contains_matrix(&b, &b, &tol()).unwrap().holds);
        assert!((gg_distance(&a, &b, &tol()).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(gg_distance(&b, &a, &tol()).unwrap(), 0.0);
        assert!((gg_distance(&d(&[0.0; 3]), &b, &tol()).unwrap() - 2.0).abs() < 1e-12);
        assert!(gg_distance(&a, &d(&[1.0, 1.0]), &tol()).is_err());
    }

    #[test]
    fn marginal_rank_is_flagged() {
        let r = rank_reading(d(&[1.0, 5e-10, 0.0]).as_mat(), &tol());
        assert_eq!(r.rank, 1);
        assert!(r.marginal);
        assert!(!rank_reading(d(&[1.0, 0.5]).as_mat(), &tol()).marginal);
    }

    #[test]
    fn unitary_right_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = d(&[1.0, 2.0]);
        let v = random_unitary(&mut rng, 2);
        let b = ComplexMatrix::from(&v * a.as_mat());
        let w = closure_u_right_contains(&a, &b, &tol()).unwrap();
        assert!(w.holds);
        assert!(w.residual.unwrap() <= 1e-10);
        let twice = ComplexMatrix::from(scaled(a.as_mat(), 2.0));
        assert!(!closure_u_right_contains(&a, &twice, &tol()).unwrap().holds);
        // Rank-deficient A still gets a witness.
        let a = d(&[1.0, 0.0, 3.0]);
        let b = ComplexMatrix::from(random_unitary(&mut rng, 3) * a.as_mat());
        let w = closure_u_right_contains(&a, &b, &tol()).unwrap();
        assert!(w.holds && w.residual.unwrap() <= 1e-10);
    }

    #[test]
    fn unitary_left_mirrors_right() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = ComplexMatrix::from(crate::matrix::sample::gaussian(&mut rng, 3, 3));
        let v = random_unitary(&mut rng, 3);
        let b = ComplexMatrix::from(a.as_mat() * &v);
        let w = closure_u_left_contains(&a, &b, &tol()).unwrap();
        assert!(w.holds);
        let u = w.unitary.unwrap();
        assert!(op_norm(&(a.as_mat() * u - b.as_mat())) <= 1e-10);
        let other = ComplexMatrix::from(scaled(b.as_mat(), 1.5));
        assert!(!closure_u_left_contains(&a, &other, &tol()).unwrap().holds);
        for (x, y) in [(&a, &b), (&a, &other)] {
            assert_eq!(
                closure_u_left_contains(x, y, &tol()).unwrap().holds,
                closure_u_right_contains(&x.adjoint(), &y.adjoint(), &tol())
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn uu_examples() {
        assert!(!closure_uu_contains(&d(&[3.0, 1.0]), &d(&[2.0, 2.0]), &tol()).unwrap());
        assert!((uu_distance(&d(&[3.0, 1.0]), &d(&[2.0, 2.0])).unwrap() - 1.0).abs() < 1e-12);
        assert!(closure_uu_contains(&d(&[3.0, 1.0, 0.5]), &d(&[0.5, 3.0, 1.0]), &tol()).unwrap());
        assert!((uu_distance(&d(&[0.0, 0.0]), &d(&[4.0, 1.0])).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn lplus_examples() {
        let a = d(&[1.0, 0.0]);
        assert!(lplus_member(&a, &a, &tol()).unwrap());
        assert!(!lplus_member(&a, &d(&[0.0, 1.0]), &tol()).unwrap());
        assert!(lplus_member(&a, &d(&[-1.0, 0.0]), &tol()).is_err());
    }

    #[test]
    fn g_right_examples() {
        let a = d(&[1.0, 1.0, 0.0]);
        assert!(closure_g_right_contains(&a, &d(&[0.5, 0.0, 0.0]), &tol()).unwrap());
        assert!(!closure_g_right_contains(&a, &d(&[0.0, 0.0, 1.0]), &tol()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = crate::matrix::random_invertible(&mut rng, 3);
        let b = ComplexMatrix::from(a.as_mat() * g);
        assert!(closure_g_right_contains(&a, &b, &tol()).unwrap());
        assert!(orbit_member_exact(&a, &b, Group::GRight, &tol()).unwrap());
    }

    #[test]
    fn exact_orbits() {
        let a = d(&[2.0, 1.0, 0.0]);
        assert!(orbit_member_exact(&a, &d(&[5.0, 0.0, 7.0]), Group::GG, &tol()).unwrap());
        assert!(!orbit_member_exact(&a, &d(&[0.5, 0.0, 0.0]), Group::GRight, &tol()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let u = random_unitary(&mut rng, 3);
        assert!(orbit_member_exact(
            &a,
            &ComplexMatrix::from(&u * a.as_mat()),
            Group::URight,
            &tol()
        )
        .unwrap());
        assert!(!orbit_member_exact(
            &a,
            &ComplexMatrix::from(&u * a.as_mat()),
            Group::ULeft,
            &tol()
        )
        .unwrap());
        assert!(orbit_member_exact(
            &a,
            &ComplexMatrix::from(a.as_mat() * &u),
            Group::ULeft,
            &tol()
        )
        .unwrap());
        assert!(orbit_member_exact(&a, &d(&[0.0, 1.0, 2.0]), Group::UU, &tol()).unwrap());
    }
}
