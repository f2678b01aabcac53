//! Extended Fredholm index regions on a single Hilbert space, and the closed
//! two-sided ideals `J_α` of `B(H)`.
//!
//! All operators here act on one space `H`, so every descriptor must have
//! `dim H = dim K` equal to the ambient dimension of the query.

use std::cmp::Ordering;

use crate::cardinal::{Cardinal, SignedIndex};
use crate::descriptor::OperatorDescriptor;
use crate::error::{Error, Result};

/// `Ind_γ(H)`: operators with `ind` defined and equal to `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRegionQuery {
    gamma: SignedIndex,
    ambient_dim: Cardinal,
}

impl IndexRegionQuery {
    pub fn new(gamma: SignedIndex, ambient_dim: Cardinal) -> Result<Self> {
        let Some(size) = gamma.magnitude() else {
            return Err(Error::validation(
                "gamma",
                "an index region needs a defined index",
            ));
        };
        if ambient_dim.is_finite() {
            return Err(Error::precondition(format!(
                "index regions live on infinite-dimensional spaces, got dim H = {ambient_dim}"
            )));
        }
        if *size > ambient_dim {
            return Err(Error::precondition(format!(
                "|gamma| = {size} exceeds dim H = {ambient_dim}"
            )));
        }
        Ok(IndexRegionQuery { gamma, ambient_dim })
    }

    pub fn gamma(&self) -> &SignedIndex {
        &self.gamma
    }

    pub fn ambient_dim(&self) -> &Cardinal {
        &self.ambient_dim
    }

    fn size(&self) -> &Cardinal {
        self.gamma.magnitude().expect("checked at construction")
    }

    fn check(&self, a: &OperatorDescriptor) -> Result<()> {
        if a.dim_h() != self.ambient_dim || a.dim_k() != self.ambient_dim {
            return Err(Error::precondition(format!(
                "operator acts {} -> {}, query is on a space of dimension {}",
                a.dim_h(),
                a.dim_k(),
                self.ambient_dim
            )));
        }
        Ok(())
    }
}

fn square_infinite(a: &OperatorDescriptor) -> Result<()> {
    if !a.is_square() || a.dim_h().is_finite() {
        return Err(Error::precondition(format!(
            "needs dim H = dim K infinite, got {} and {}",
            a.dim_h(),
            a.dim_k()
        )));
    }
    Ok(())
}

/// `ind(A)` is undefined, i.e. `ι_i(A) = ι_f(A)` is infinite.
pub fn uind_member(a: &OperatorDescriptor) -> Result<bool> {
    square_infinite(a)?;
    Ok(!a.ind().is_defined())
}

pub fn ind_region_member(a: &OperatorDescriptor, q: &IndexRegionQuery) -> Result<bool> {
    q.check(a)?;
    Ok(a.ind() == q.gamma)
}

/// `cl Ind_γ = Ind_γ ∪ {A ∈ Uind : ι_m(A) ≥ |γ|}`.
pub fn ind_closure_member(a: &OperatorDescriptor, q: &IndexRegionQuery) -> Result<bool> {
    Ok(ind_region_member(a, q)? || ind_boundary_member(a, q)?)
}

/// The boundary of `Ind_γ`: `{A ∈ Uind : ι_m(A) ≥ |γ|}`.
pub fn ind_boundary_member(a: &OperatorDescriptor, q: &IndexRegionQuery) -> Result<bool> {
    q.check(a)?;
    Ok(uind_member(a)? && a.iota_m() >= *q.size())
}

/// `ind(A) ∈ ℤ ∪ {−ℵ₀, ℵ₀}`.
pub fn semi_fredholm(a: &OperatorDescriptor) -> Result<bool> {
    square_infinite(a)?;
    Ok(a.ind()
        .magnitude()
        .is_some_and(|m| *m <= Cardinal::aleph_0()))
}

/// `Ind_γ^m = {A ∈ Ind_γ : ι_m(A) < m}`, open and dense in `Ind_γ`.
pub fn ind_cut_member(a: &OperatorDescriptor, q: &IndexRegionQuery, m: &Cardinal) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::validation(
            "m",
            "the cut parameter must be at least 1",
        ));
    }
    Ok(ind_region_member(a, q)? && a.iota_m() < *m)
}

/// Whether `cl {G A L⁻¹}` has nonempty interior: `A` or `A*` is onto.
pub fn closure_has_interior(a: &OperatorDescriptor) -> Result<bool> {
    square_infinite(a)?;
    Ok(a.ind().is_defined() && a.iota_m().is_zero())
}

/// `J_α = {A : ι_r(A) < α, or ι_r(A) = α and ι_b(A) = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealHandle {
    alpha: Cardinal,
    ambient_dim: Cardinal,
}

impl IdealHandle {
    /// An ideal of `B(H)` for nonseparable `H`; `ℵ₀ ≤ α ≤ dim H`.
    pub fn new(alpha: Cardinal, ambient_dim: Cardinal) -> Result<Self> {
        if ambient_dim <= Cardinal::aleph_0() {
            return Err(Error::precondition(format!(
                "the ideal lattice is described for nonseparable spaces, got dim H = {ambient_dim}"
            )));
        }
        Self::checked(alpha, ambient_dim)
    }

    /// `J_ℵ₀`, the compact operators, on any infinite-dimensional space.
    pub fn compact(ambient_dim: Cardinal) -> Result<Self> {
        Self::checked(Cardinal::aleph_0(), ambient_dim)
    }

    fn checked(alpha: Cardinal, ambient_dim: Cardinal) -> Result<Self> {
        if alpha.is_finite() {
            return Err(Error::validation(
                "alpha",
                format!("must be infinite, got {alpha}"),
            ));
        }
        if alpha > ambient_dim {
            return Err(Error::validation(
                "alpha",
                format!("{alpha} exceeds dim H = {ambient_dim}"),
            ));
        }
        Ok(IdealHandle { alpha, ambient_dim })
    }

    pub fn alpha(&self) -> &Cardinal {
        &self.alpha
    }

    pub fn ambient_dim(&self) -> &Cardinal {
        &self.ambient_dim
    }
}

pub fn ideal_member(a: &OperatorDescriptor, j: &IdealHandle) -> Result<bool> {
    if a.dim_h() != j.ambient_dim || a.dim_k() != j.ambient_dim {
        return Err(Error::precondition(format!(
            "operator acts {} -> {}, ideal lives on a space of dimension {}",
            a.dim_h(),
            a.dim_k(),
            j.ambient_dim
        )));
    }
    let idx = a.indices();
    Ok(idx.iota_r < j.alpha || (idx.iota_r == j.alpha && idx.iota_b == 0))
}

/// `J_α ⊆ J_β ⇔ α ≤ β`, and distinct `α` give distinct ideals.
pub fn ideal_compare(a: &IdealHandle, b: &IdealHandle) -> Result<Ordering> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::precondition(format!(
            "ideals on different spaces ({} and {})",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(a.alpha.cmp(&b.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{RangeProfile, RawBlock, Tail};

    fn c(s: &str) -> Cardinal {
        s.parse().unwrap()
    }

    fn g(s: &str) -> SignedIndex {
        s.parse().unwrap()
    }

    fn q(gamma: &str) -> IndexRegionQuery {
        IndexRegionQuery::new(g(gamma), c("aleph_0")).unwrap()
    }

    fn shift() -> OperatorDescriptor {
        OperatorDescriptor::unilateral_shift()
    }

    fn compact() -> OperatorDescriptor {
        OperatorDescriptor::compact_diagonal()
    }

    fn id() -> OperatorDescriptor {
        OperatorDescriptor::identity(c("aleph_0"))
    }

    /// Closed range of dimension ℵ₀ with kernel and cokernel of dimension `m`.
    fn closed_with(m: &str) -> OperatorDescriptor {
        OperatorDescriptor::new(c(m), c(m), RangeProfile::closed(c("aleph_0")))
    }

    #[test]
    fn uind_examples() {
        assert!(uind_member(&compact()).unwrap());
        assert!(!uind_member(&shift()).unwrap());
        assert!(!uind_member(&id()).unwrap());
        assert!(uind_member(&OperatorDescriptor::zero(c("3"), c("3"))).is_err());
    }

    #[test]
    fn region_examples() {
        assert!(ind_region_member(&shift(), &q("-1")).unwrap());
        assert!(!ind_region_member(&shift(), &q("0")).unwrap());
        assert!(ind_region_member(&id(), &q("0")).unwrap());
    }

    #[test]
    fn closure_examples() {
        for gamma in ["0", "1", "-7", "5"] {
            assert!(ind_closure_member(&compact(), &q(gamma)).unwrap());
        }
        assert!(!ind_closure_member(&closed_with("0"), &q("1")).unwrap());
        assert!(ind_closure_member(&shift(), &q("-1")).unwrap());
    }

    #[test]
    fn boundary_examples() {
        assert!(ind_boundary_member(&compact(), &q("-1")).unwrap());
        assert!(!ind_boundary_member(&shift(), &q("-1")).unwrap());
        assert!(!ind_boundary_member(&closed_with("2"), &q("aleph_0")).unwrap());
    }

    #[test]
    fn semi_fredholm_examples() {
        assert!(semi_fredholm(&shift()).unwrap());
        let wide =
            OperatorDescriptor::new(c("0"), c("aleph_1"), RangeProfile::closed(c("aleph_1")));
        assert!(!semi_fredholm(&wide).unwrap());
        assert!(!semi_fredholm(&compact()).unwrap());
    }

    #[test]
    fn cut_examples() {
        assert!(ind_cut_member(&shift(), &q("-1"), &c("1")).unwrap());
        assert!(!ind_cut_member(&closed_with("3"), &q("0"), &c("2")).unwrap());
        assert!(ind_cut_member(&id(), &q("0"), &c("aleph_0")).unwrap());
        assert!(ind_cut_member(&id(), &q("0"), &c("0")).is_err());
    }

    #[test]
    fn interior_examples() {
        assert!(closure_has_interior(&shift()).unwrap());
        assert!(!closure_has_interior(&compact()).unwrap());
        assert!(closure_has_interior(&id()).unwrap());
    }

    #[test]
    fn query_validation() {
        assert!(IndexRegionQuery::new(SignedIndex::Undefined, c("aleph_0")).is_err());
        assert!(IndexRegionQuery::new(g("aleph_1"), c("aleph_0")).is_err());
        assert!(IndexRegionQuery::new(g("1"), c("5")).is_err());
        assert!(ind_region_member(&OperatorDescriptor::identity(c("aleph_1")), &q("0")).is_err());
    }

    #[test]
    fn ideal_examples() {
        let a1 = c("aleph_1");
        let compact_on_a1 = OperatorDescriptor::new(
            c("aleph_1"),
            c("aleph_1"),
            RangeProfile::canonicalize(vec![], Tail::Repeat(c("1"))).unwrap(),
        );
        let j0 = IdealHandle::new(c("aleph_0"), a1.clone()).unwrap();
        let j1 = IdealHandle::new(a1.clone(), a1.clone()).unwrap();
        assert!(ideal_member(&compact_on_a1, &j0).unwrap());
        assert!(!ideal_member(&OperatorDescriptor::identity(a1.clone()), &j1).unwrap());
        let closed_a0 =
            OperatorDescriptor::new(a1.clone(), a1.clone(), RangeProfile::closed(c("aleph_0")));
        assert!(ideal_member(&closed_a0, &j1).unwrap());
        assert!(!ideal_member(&closed_a0, &j0).unwrap());

        let bad = OperatorDescriptor::new(
            c("aleph_1"),
            c("aleph_1"),
            RangeProfile::canonicalize(vec![RawBlock::new(c("aleph_0"), 1)], Tail::Zero).unwrap(),
        );
        assert!(ideal_member(&bad, &IdealHandle::compact(c("aleph_0")).unwrap()).is_err());
    }

    #[test]
    fn ideal_handles() {
        let a = c("aleph_w+1");
        let h = |s: &str| IdealHandle::new(c(s), a.clone()).unwrap();
        assert_eq!(
            ideal_compare(&h("aleph_0"), &h("aleph_1")).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            ideal_compare(&h("aleph_1"), &h("aleph_1")).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            ideal_compare(&h("aleph_w"), &h("aleph_1")).unwrap(),
            Ordering::Greater
        );
        assert!(IdealHandle::new(c("aleph_0"), c("aleph_0")).is_err());
        assert!(IdealHandle::compact(c("aleph_0")).is_ok());
        assert!(IdealHandle::new(c("7"), c("aleph_1")).is_err());
        assert!(IdealHandle::new(c("aleph_2"), c("aleph_1")).is_err());
        let other = IdealHandle::new(c("aleph_1"), c("aleph_2")).unwrap();
        assert!(ideal_compare(&h("aleph_1"), &other).is_err());
    }
}
