//! Explicit approximations from the closure proofs, checked by residuals.

use super::closure::{rank_reading, scaled};
use super::linalg::{self, complement, op_norm, polar_unitary, svd};
use super::{same_shape, ComplexMatrix, Mat, Tolerances};
use crate::error::{Error, Result};

/// `C ≈ U A G⁻¹` with `U` unitary and `G` invertible.
#[derive(Debug, Clone)]
pub struct GgApproximation {
    pub u: Mat,
    pub g: Mat,
    /// `‖C − U A G⁻¹‖`, computed from a numerical inverse of `G`.
    pub achieved_error: f64,
    /// `σ_max(G) / σ_min(G)`.
    pub condition_number: f64,
}

/// Builds `U` and `G` with `‖C − U A G⁻¹‖ ≤ eps`, assuming `rank C ≤ rank A`.
///
/// Let `V` be the span of the right singular vectors of `C` with `σ ≥ eps/2`
/// (dimension `k`) and `W` the span of the top `k` right singular vectors of
/// `A`. `U` maps `A(W)` onto `C(V)`, and `G` is `(C|_V)⁻¹ U A` on `W` and `n`
/// times a unitary `W⊥ → V⊥` elsewhere, with `n = ⌈2‖A‖/eps⌉`. Then
/// `U A G⁻¹` agrees with `C` on `V` and has norm at most `‖A‖/n ≤ eps/2` on
/// `V⊥`, where `C` itself has norm below `eps/2`.
pub fn gg_approximate(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    eps: f64,
    tol: &Tolerances,
) -> Result<GgApproximation> {
    same_shape(a, c)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::validation(
            "eps",
            format!("must be positive, got {eps}"),
        ));
    }
    let (am, cm) = (a.as_mat(), c.as_mat());
    let (rows, cols) = a.shape();
    let ra = rank_reading(am, tol).rank;
    let rc = rank_reading(cm, tol).rank;
    if rc > ra {
        return Err(Error::Infeasible(format!(
            "rank of C ({rc}) exceeds rank of A ({ra}); C is at distance {:.3e} from the orbit closure",
            c.singular_values()[ra]
        )));
    }
    if op_norm(&(cm - am)) <= eps {
        return Ok(GgApproximation {
            u: Mat::identity(rows, rows),
            g: Mat::identity(cols, cols),
            achieved_error: op_norm(&(cm - am)),
            condition_number: 1.0,
        });
    }

    let sa = svd(am);
    let sc = svd(cm);
    // V: right singular vectors of C with σ ≥ eps/2; W: the top ones of A.
    let k = sc
        .singular_values
        .iter()
        .filter(|s| **s >= eps / 2.0)
        .count()
        .min(ra);
    let v = sc.v.columns(0, k).into_owned();
    let w = sa.v.columns(0, k).into_owned();

    // U: left singular vectors of A onto those of C, so U A(W) = C(V).
    let u = &sc.u * sa.u.adjoint();

    // On W: G = (C|_V)⁻¹ U A, i.e. V Σ_C⁻¹ U_C,k* (U A W).
    let inv: Vec<f64> = sc.singular_values[..k].iter().map(|s| 1.0 / s).collect();
    let y = linalg::real_diag(&inv) * sc.u.columns(0, k).adjoint() * (&u * am * &w);
    let n = (2.0 * op_norm(am) / eps).ceil().max(1.0);
    let g = &v * y * w.adjoint() + scaled(&(complement(&v) * complement(&w).adjoint()), n);

    let g_inv = linalg::inverse(&g)
        .ok_or_else(|| Error::Infeasible("constructed G is numerically singular".into()))?;
    let achieved_error = op_norm(&(cm - &u * am * g_inv));
    let sg = linalg::singular_values(&g);
    let condition_number = sg[0] / sg[sg.len() - 1];
    Ok(GgApproximation {
        u,
        g,
        achieved_error,
        condition_number,
    })
}

/// One step of [`unitary_align_sequence`].
#[derive(Debug, Clone)]
pub enum AlignStep {
    Aligned {
        /// Unitary on the target space with `Z(A(V)) = A_n(V)`.
        z: Mat,
        /// `‖Z P − P‖` for `P` the projection onto `A(V)`.
        alignment_error: f64,
        /// `‖Z P Z* − P_n‖` for `P_n` the projection onto `A_n(V)`.
        range_error: f64,
    },
    /// `A_n` is not bounded below on `V` at the rank threshold.
    NotBoundedBelow { min_singular_value: f64 },
}

/// For `A_n → A` and `V` on which `A` is bounded below, unitaries `Z_n` with
/// `Z_n(A(V)) = A_n(V)` and `Z_n P_{A(V)} → P_{A(V)}`.
///
/// `Z_n` is the unitary factor of the compression `P_n|_{A(V)}`, extended by
/// the same construction on the orthogonal complements.
pub fn unitary_align_sequence(
    a: &ComplexMatrix,
    seq: &[ComplexMatrix],
    v_basis: &Mat,
    tol: &Tolerances,
) -> Result<Vec<AlignStep>> {
    if v_basis.nrows() != a.cols() {
        return Err(Error::precondition(format!(
            "V has vectors of length {}, A has {} columns",
            v_basis.nrows(),
            a.cols()
        )));
    }
    let k = v_basis.ncols();
    // Orthonormal basis of m(V), or the smallest singular value of m on V
    // when that is at or below the rank threshold.
    let image_basis = |m: &Mat| -> std::result::Result<Mat, f64> {
        let s = svd(&(m * v_basis));
        let smallest = if k == 0 {
            f64::INFINITY
        } else {
            s.singular_values.get(k - 1).copied().unwrap_or(0.0)
        };
        if smallest <= tol.rank_tol * op_norm(m) {
            return Err(smallest);
        }
        Ok(s.u.columns(0, k).into_owned())
    };
    let q = image_basis(a.as_mat()).map_err(|s| {
        Error::precondition(format!(
            "A is not bounded below on V (smallest singular value {s:.3e})"
        ))
    })?;
    let q_perp = complement(&q);
    let p = &q * q.adjoint();

    let mut out = Vec::with_capacity(seq.len());
    for an in seq {
        same_shape(a, an)?;
        let qn = match image_basis(an.as_mat()) {
            Ok(qn) => qn,
            Err(s) => {
                out.push(AlignStep::NotBoundedBelow {
                    min_singular_value: s,
                });
                continue;
            }
        };
        let qn_perp = complement(&qn);
        let w = polar_unitary(&(qn.adjoint() * &q));
        let w_perp = polar_unitary(&(qn_perp.adjoint() * &q_perp));
        let z = &qn * &w * q.adjoint() + &qn_perp * w_perp * q_perp.adjoint();
        let alignment_error = op_norm(&(&z * &p - &p));
        let range_error = op_norm(&(&z * &p * z.adjoint() - &qn * qn.adjoint()));
        out.push(AlignStep::Aligned {
            z,
            alignment_error,
            range_error,
        });
    }
    Ok(out)
}
