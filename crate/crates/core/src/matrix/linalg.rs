//! Dense linear algebra helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Mat;

/// `M = U Σ V*` with square unitary `U` (m×m) and `V` (n×n) and singular
/// values in descending order.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub singular_values: Vec<f64>,
    pub u: Mat,
    pub v: Mat,
}

impl SvdResult {
    /// `U Σ V*`.
    pub fn reconstruct(&self) -> Mat {
        let (m, n) = (self.u.nrows(), self.v.nrows());
        let mut sigma = Mat::zeros(m, n);
        for (i, s) in self.singular_values.iter().enumerate() {
            sigma[(i, i)] = Complex64::new(*s, 0.0);
        }
        &self.u * sigma * self.v.adjoint()
    }
}

pub fn svd(m: &Mat) -> SvdResult {
    let (rows, cols) = m.shape();
    if rows < cols {
        let t = svd(&m.adjoint());
        return SvdResult {
            singular_values: t.singular_values,
            u: t.v,
            v: t.u,
        };
    }
    let (work, v) = jacobi(m);
    let norms: Vec<f64> = (0..cols).map(|j| work.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v = Mat::from_fn(cols, cols, |r, c| v[(r, order[c])]);
    // Left vectors of (numerically) zero singular values are not determined
    // by A V = U Σ; they come from completing the others.
    let top = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = top * f64::EPSILON * (rows as f64) * 16.0;
    let k = singular_values.iter().filter(|x| **x > cutoff).count();
    let u = Mat::from_fn(rows, k, |r, c| work[(r, order[c])] / singular_values[c]);
    SvdResult {
        singular_values,
        u: complete(&u),
        v,
    }
}

/// One-sided Jacobi on the columns of a tall `m`: returns `M V` with
/// mutually orthogonal columns and the unitary `V` that achieves it.
fn jacobi(m: &Mat) -> (Mat, Mat) {
    let n = m.ncols();
    let mut a = m.clone();
    let mut v = Mat::identity(n, n);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Absorb the phase of gamma into column q, then rotate as in
                // the real case.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut a, &mut v] {
                    for r in 0..mat.nrows() {
                        let x = mat[(r, p)];
                        let y = mat[(r, q)] * phase;
                        mat[(r, p)] = x * c - y * s;
                        mat[(r, q)] = x * s + y * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    (a, v)
}

pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.is_empty() {
        return vec![];
    }
    let (work, _) = if m.nrows() >= m.ncols() {
        jacobi(m)
    } else {
        jacobi(&m.adjoint())
    };
    let mut s: Vec<f64> = work.column_iter().map(|c| c.norm()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest singular value.
pub fn op_norm(m: &Mat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Extends orthonormal columns to a square unitary, keeping them first.
pub fn complete(q: &Mat) -> Mat {
    let (m, k) = q.shape();
    if k == m {
        return q.clone();
    }
    let mut out = Mat::zeros(m, m);
    out.columns_mut(0, k).copy_from(q);
    out.columns_mut(k, m - k).copy_from(&complement(q));
    out
}

/// Orthonormal basis of the orthogonal complement of the span of `q`'s
/// orthonormal columns.
pub fn complement(q: &Mat) -> Mat {
    let (m, k) = q.shape();
    if k == m {
        return Mat::zeros(m, 0);
    }
    // Householder QR of [q | I]: the first k columns of Q span q.
    let mut stacked = Mat::zeros(m, k + m);
    stacked.columns_mut(0, k).copy_from(q);
    stacked.columns_mut(k, m).copy_from(&Mat::identity(m, m));
    stacked.qr().q().columns(k, m - k).into_owned()
}

/// Orthonormal basis of the column space, using singular values above `tol`.
pub fn range_basis(m: &Mat, tol: f64) -> Mat {
    let s = svd(m);
    let r = s.singular_values.iter().filter(|x| **x > tol).count();
    s.u.columns(0, r).into_owned()
}

/// Unitary factor `X Y*` of the polar decomposition of a square `T = X S Y*`.
pub fn polar_unitary(t: &Mat) -> Mat {
    if t.is_empty() {
        return t.clone();
    }
    let s = svd(t);
    s.u * s.v.adjoint()
}

/// Inverse of a square matrix through its SVD, `None` when singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    let s = svd(m);
    if s.singular_values.last().is_some_and(|x| *x == 0.0) {
        return None;
    }
    let inv: Vec<f64> = s.singular_values.iter().map(|x| 1.0 / x).collect();
    Some(s.v * real_diag(&inv) * s.u.adjoint())
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(h: &Mat) -> f64 {
    if h.is_empty() {
        return 0.0;
    }
    hermitian(h)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `(H + H*)/2`, removing rounding asymmetry.
pub fn hermitian(h: &Mat) -> Mat {
    (h + h.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues and eigenvectors
/// as columns, eigenvalues descending.
pub fn hermitian_eigen(h: &Mat) -> (Vec<f64>, Mat) {
    let e = hermitian(h).symmetric_eigen();
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| e.eigenvalues[j].total_cmp(&e.eigenvalues[i]));
    let values = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(h.nrows(), order.len(), |r, c| e.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn real_diag(values: &[f64]) -> Mat {
    let n = values.len();
    DMatrix::from_fn(n, n, |i, j| {
        Complex64::new(if i == j { values[i] } else { 0.0 }, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Mat {
        DMatrix::from_fn(4, 3, |i, j| {
            Complex64::new(
                (i * 3 + j) as f64 * 0.7 - 2.0,
                ((i + 2 * j) % 3) as f64 - 1.0,
            )
        })
    }

    fn unitary_defect(u: &Mat) -> f64 {
        op_norm(&(u.adjoint() * u - Mat::identity(u.ncols(), u.ncols())))
    }

    #[test]
    fn svd_reconstructs_with_unitary_factors() {
        let low_rank = sample().columns(0, 1) * sample().columns(1, 1).adjoint();
        for m in [
            sample(),
            sample().adjoint(),
            Mat::zeros(2, 3),
            low_rank.clone(),
            low_rank.adjoint(),
        ] {
            let s = svd(&m);
            assert!(op_norm(&(s.reconstruct() - &m)) < 1e-12);
            assert!(unitary_defect(&s.u) < 1e-12);
            assert!(unitary_defect(&s.v) < 1e-12);
            assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn complement_is_orthogonal() {
        let q = range_basis(&sample(), 1e-12);
        let c = complement(&q);
        assert_eq!(c.ncols(), 4 - q.ncols());
        assert!(op_norm(&(q.adjoint() * &c)) < 1e-12);
        assert!(unitary_defect(&complete(&q)) < 1e-12);
    }

    #[test]
    fn polar_factor_and_gram() {
        let t = sample().rows(0, 3).into_owned();
        let w = polar_unitary(&t);
        assert!(unitary_defect(&w) < 1e-12);
        let p = t.adjoint() * &t;
        assert!(min_eigenvalue(&p) > -1e-12);
    }
}
