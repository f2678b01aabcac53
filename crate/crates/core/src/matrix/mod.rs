//! Finite-dimensional instances: complex matrices as operators `ℂⁿ → ℂᵐ`.
//!
//! In finite dimensions every orbit-closure question has an exact linear
//! algebra answer (rank, range inclusion, singular values). These serve as a
//! numerical check on the cardinal calculus and host the constructive
//! approximations.

mod closure;
mod construct;
mod io;
mod linalg;
mod sample;
pub(crate) mod verify;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use closure::{
    closure_g_right_contains, closure_gg_contains_matrix, closure_u_left_contains,
    closure_u_right_contains, closure_uu_contains, gg_distance, lplus_member, orbit_member_exact,
    rank_reading, spectral_truncate, svd_indices, symbolic_gg_contains, uu_distance, Decision,
    RankReading, Truncation, UnitaryWitness,
};
pub use construct::{gg_approximate, unitary_align_sequence, AlignStep, GgApproximation};
pub use linalg::{op_norm, svd, SvdResult};
pub use sample::{gaussian, random_invertible, random_unitary, sample_orbit_distance};

pub type Mat = DMatrix<Complex64>;

/// A dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(Mat);

impl ComplexMatrix {
    pub fn new(m: Mat) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation("data", "entries must be finite"));
        }
        Ok(ComplexMatrix(m))
    }

    /// Row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: &[Complex64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::validation(
                "data",
                format!(
                    "expected {} entries for {rows}x{cols}, got {}",
                    rows * cols,
                    data.len()
                ),
            ));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, data))
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    pub fn into_mat(self) -> Mat {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    /// Operator norm (largest singular value).
    pub fn norm(&self) -> f64 {
        op_norm(&self.0)
    }

    /// Singular values in descending order, `min(rows, cols)` of them.
    pub fn singular_values(&self) -> Vec<f64> {
        linalg::singular_values(&self.0)
    }

    pub fn to_json(&self) -> String {
        io::to_json(self)
    }

    /// Accepts the JSON form or plain text rows.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            io::from_json(text)
        } else {
            io::from_text(text)
        }
    }
}

impl From<Mat> for ComplexMatrix {
    /// Panics on non-finite entries; use [`ComplexMatrix::new`] for untrusted data.
    fn from(m: Mat) -> Self {
        ComplexMatrix::new(m).expect("finite entries")
    }
}

impl FromStr for ComplexMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComplexMatrix::parse(s)
    }
}

impl fmt::Display for ComplexMatrix {
    /// Plain-text rows, readable back by [`ComplexMatrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        io::write_text(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Singular values at most `rank_tol · σ_max` count as zero.
    pub rank_tol: f64,
    pub recon_tol: f64,
    pub match_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_tol: 1e-9,
            recon_tol: 1e-10,
            match_tol: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn new(rank_tol: f64, recon_tol: f64, match_tol: f64) -> Result<Self> {
        for (field, v) in [
            ("rank_tol", rank_tol),
            ("recon_tol", recon_tol),
            ("match_tol", match_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::validation(
                    field,
                    format!("must be positive, got {v}"),
                ));
            }
        }
        Ok(Tolerances {
            rank_tol,
            recon_tol,
            match_tol,
        })
    }
}

/// The groups acting on `B(H, K)`, written by where they act on `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    /// `G A L⁻¹`, invertibles on both sides.
    GG,
    /// `U A`, unitaries on the left.
    URight,
    /// `A U`, unitaries on the right.
    ULeft,
    /// `A G`, invertibles on the right.
    GRight,
    /// `U A V`, unitaries on both sides.
    UU,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::GG,
        Group::URight,
        Group::ULeft,
        Group::GRight,
        Group::UU,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::GG => "gg",
            Group::URight => "ur",
            Group::ULeft => "ul",
            Group::GRight => "gr",
            Group::UU => "uu",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| {
                Error::validation("group", format!("expected gg, ur, ul, gr or uu, got {s:?}"))
            })
    }
}

fn same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::precondition(format!(
            "shape mismatch: {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}
