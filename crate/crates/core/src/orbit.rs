//! Closures of two-sided orbits `{G A L⁻¹}` decided from indices.
//!
//! Two routes are implemented and kept apart:
//!
//! * [`closure_gg_contains`] checks the three index conditions
//!   (a) `ι_r(C) ≤ ι_r(A)`, (b) `ι_b(A) = 0 ∧ ι_b(C) = 1 ⇒ ι_r(C) < ι_r(A)`,
//!   (c) some `α` has `ι_i(C) = ι_i(A) + α` and `ι_f(C) = ι_f(A) + α`,
//!   solving (c) by intersecting solution sets of cardinal equations.
//! * [`closure_gg_contains_via_lambda`] decides `Λ(C) ⊆ Λ(A)` over a finite
//!   universe of cardinals using the explicit case formulas for `Λ`, where
//!   `Λ(X)` is the set of triples `(dim(H ⊖ V), dim V, dim(K ⊖ X(V)))` over
//!   closed subspaces `V` on which `X` is bounded below.
//!
//! Both characterise the same set, so each is the other's oracle.

use std::fmt;

use crate::cardinal::{AlphaSolutionSet, Cardinal, SignedIndex};
use crate::descriptor::{IndexVector, OperatorDescriptor};
use crate::error::{Error, Result};

/// `(dim(H ⊖ V), dim V, dim(K ⊖ A(V)))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaTriple {
    pub left: Cardinal,
    pub mid: Cardinal,
    pub right: Cardinal,
}

impl LambdaTriple {
    pub fn new(left: Cardinal, mid: Cardinal, right: Cardinal) -> Self {
        LambdaTriple { left, mid, right }
    }
}

impl fmt::Display for LambdaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.left, self.mid, self.right)
    }
}

/// Which condition of the closure theorem rejected a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    RangeIndex,
    BinaryIndex,
    InitialFinal,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::RangeIndex => "Theorem orbit (a)",
            Condition::BinaryIndex => "Theorem orbit (b)",
            Condition::InitialFinal => "Theorem orbit (c)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitVerdict {
    pub member: bool,
    /// First failed condition, in the order (a), (b), (c). `None` for members.
    pub failed: Option<Condition>,
    /// Least `α` witnessing (c), for members.
    pub alpha: Option<Cardinal>,
}

fn same_spaces(a: &OperatorDescriptor, c: &OperatorDescriptor) -> Result<()> {
    if a.dim_h() != c.dim_h() || a.dim_k() != c.dim_k() {
        return Err(Error::precondition(format!(
            "operators act between different spaces: ({} -> {}) vs ({} -> {})",
            a.dim_h(),
            a.dim_k(),
            c.dim_h(),
            c.dim_k()
        )));
    }
    Ok(())
}

/// Membership in `Λ(A)`: `t = (ι_i + ν, μ, ι_f + ν)` with `μ + ν = ι_r` and
/// `μ < ι_r` whenever `ι_b = 0`.
pub fn lambda_member(a: &OperatorDescriptor, t: &LambdaTriple) -> bool {
    let idx = a.indices();
    let mu = &t.mid;
    if idx.iota_b == 0 && *mu >= idx.iota_r {
        return false;
    }
    let nu = mu
        .solve_add(&idx.iota_r)
        .intersect(&idx.iota_i.solve_add(&t.left))
        .intersect(&idx.iota_f.solve_add(&t.right));
    !nu.is_empty()
}

/// All triples of `Λ(A)` with coordinates in `universe`, sorted.
pub fn lambda_enumerate(a: &OperatorDescriptor, universe: &[Cardinal]) -> Vec<LambdaTriple> {
    let mut u = universe.to_vec();
    u.sort();
    u.dedup();
    let mut out = Vec::new();
    for left in &u {
        for mid in &u {
            for right in &u {
                let t = LambdaTriple::new(left.clone(), mid.clone(), right.clone());
                if lambda_member(a, &t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Solution set of condition (c) by the general route.
pub fn condition_c_solutions(a: &IndexVector, c: &IndexVector) -> AlphaSolutionSet {
    a.iota_i
        .solve_add(&c.iota_i)
        .intersect(&a.iota_f.solve_add(&c.iota_f))
}

/// Is `C` in the norm closure of `{G A L⁻¹ : G, L invertible}`?
pub fn closure_gg_contains(a: &OperatorDescriptor, c: &OperatorDescriptor) -> Result<OrbitVerdict> {
    same_spaces(a, c)?;
    let (ia, ic) = (a.indices(), c.indices());
    let reject = |cond| OrbitVerdict {
        member: false,
        failed: Some(cond),
        alpha: None,
    };
    if ic.iota_r > ia.iota_r {
        return Ok(reject(Condition::RangeIndex));
    }
    if ia.iota_b == 0 && ic.iota_b == 1 && ic.iota_r >= ia.iota_r {
        return Ok(reject(Condition::BinaryIndex));
    }
    // When ι_i(C) = dim H and ι_f(C) = dim K, α = ι_r(A) always works.
    let alpha = if ic.iota_i == c.dim_h() && ic.iota_f == c.dim_k() {
        Some(ia.iota_r.clone())
    } else {
        condition_c_solutions(&ia, &ic).least().cloned()
    };
    Ok(match alpha {
        Some(alpha) => OrbitVerdict {
            member: true,
            failed: None,
            alpha: Some(alpha),
        },
        None => reject(Condition::InitialFinal),
    })
}

/// Same question decided as `Λ(C) ⊆ Λ(A)` over `universe`.
///
/// The universe must separate the case formulas: it has to contain 0, the
/// finite values involved (and their sums), every index and dimension of both
/// operators, and a cardinal strictly between any two of those infinite
/// values when one exists. [`adequate_universe`] builds such a set.
pub fn closure_gg_contains_via_lambda(
    a: &OperatorDescriptor,
    c: &OperatorDescriptor,
    universe: &[Cardinal],
) -> bool {
    let shape_a = LambdaShape::of(a);
    let shape_c = LambdaShape::of(c);
    shape_c
        .sample(universe)
        .iter()
        .all(|t| shape_a.contains(t, universe))
}

/// The data the explicit formulas for `Λ(X)` depend on.
struct LambdaShape {
    dim_h: Cardinal,
    dim_k: Cardinal,
    idx: IndexVector,
}

/// `m − j` for infinite `m` is `m`.
fn minus_finite(m: &Cardinal, j: u64) -> Option<Cardinal> {
    match m {
        Cardinal::Finite(n) => n.checked_sub(j).map(Cardinal::Finite),
        inf => Some(inf.clone()),
    }
}

impl LambdaShape {
    fn of(x: &OperatorDescriptor) -> Self {
        LambdaShape {
            dim_h: x.dim_h(),
            dim_k: x.dim_k(),
            idx: x.indices(),
        }
    }

    fn finite_rank(&self) -> Option<u64> {
        self.idx.iota_r.as_finite()
    }

    fn contains(&self, t: &LambdaTriple, universe: &[Cardinal]) -> bool {
        if let Some(r) = self.finite_rank() {
            // {(dim H − j, j, dim K − j) : j = 0, …, ι_r}
            return match t.mid.as_finite() {
                Some(j) if j <= r => {
                    minus_finite(&self.dim_h, j).as_ref() == Some(&t.left)
                        && minus_finite(&self.dim_k, j).as_ref() == Some(&t.right)
                }
                _ => false,
            };
        }
        let generic = t.left == self.dim_h && t.right == self.dim_k && t.mid < self.idx.iota_r;
        if self.idx.iota_b == 0 {
            return generic;
        }
        generic
            || (t.mid == self.idx.iota_r
                && self.alpha_candidates(t, universe).iter().any(|al| {
                    *al <= self.idx.iota_r
                        && self.idx.iota_i.add(al) == t.left
                        && self.idx.iota_f.add(al) == t.right
                }))
    }

    /// Values of `α` worth trying for `(ι_i + α, ι_r, ι_f + α) = t`: the
    /// universe, the targets themselves and their finite differences.
    fn alpha_candidates(&self, t: &LambdaTriple, universe: &[Cardinal]) -> Vec<Cardinal> {
        let mut out = universe.to_vec();
        out.extend([t.left.clone(), t.right.clone()]);
        for (base, target) in [(&self.idx.iota_i, &t.left), (&self.idx.iota_f, &t.right)] {
            if let (Some(b), Some(x)) = (base.as_finite(), target.as_finite()) {
                out.extend(x.checked_sub(b).map(Cardinal::Finite));
            }
        }
        out
    }

    fn sample(&self, universe: &[Cardinal]) -> Vec<LambdaTriple> {
        if let Some(r) = self.finite_rank() {
            return (0..=r)
                .filter_map(|j| {
                    Some(LambdaTriple::new(
                        minus_finite(&self.dim_h, j)?,
                        Cardinal::Finite(j),
                        minus_finite(&self.dim_k, j)?,
                    ))
                })
                .collect();
        }
        let mut out: Vec<LambdaTriple> = universe
            .iter()
            .filter(|beta| **beta < self.idx.iota_r)
            .map(|beta| LambdaTriple::new(self.dim_h.clone(), beta.clone(), self.dim_k.clone()))
            .collect();
        if self.idx.iota_b == 1 {
            out.extend(
                universe
                    .iter()
                    .filter(|al| **al <= self.idx.iota_r)
                    .map(|al| {
                        LambdaTriple::new(
                            self.idx.iota_i.add(al),
                            self.idx.iota_r.clone(),
                            self.idx.iota_f.add(al),
                        )
                    }),
            );
        }
        out
    }
}

/// A universe on which [`closure_gg_contains_via_lambda`] is exact for the
/// given operators.
pub fn adequate_universe(ops: &[&OperatorDescriptor]) -> Vec<Cardinal> {
    let mut seen: Vec<Cardinal> = Vec::new();
    for x in ops {
        let idx = x.indices();
        seen.extend([x.dim_h(), x.dim_k(), idx.iota_r, idx.iota_i, idx.iota_f]);
        seen.extend([x.nullity().clone(), x.codefect().clone()]);
    }
    let max_finite = seen
        .iter()
        .filter_map(Cardinal::as_finite)
        .max()
        .unwrap_or(0);
    let mut u: Vec<Cardinal> = (0..=2 * max_finite + 2).map(Cardinal::Finite).collect();
    let mut infinite: Vec<Cardinal> = seen.into_iter().filter(Cardinal::is_infinite).collect();
    infinite.push(Cardinal::aleph_0());
    infinite.sort();
    infinite.dedup();
    for (i, x) in infinite.iter().enumerate() {
        u.push(x.clone());
        let succ = x.successor();
        // The successor is strictly between x and the next value when one fits.
        if infinite.get(i + 1).is_none_or(|next| succ < *next) {
            u.push(succ);
        }
    }
    u.sort();
    u.dedup();
    u
}

/// Equal closures: all four indices agree.
pub fn closure_gg_equal(a: &OperatorDescriptor, b: &OperatorDescriptor) -> Result<bool> {
    same_spaces(a, b)?;
    Ok(a.indices() == b.indices())
}

/// Is `A` a norm limit of invertible operators? (`ι_i(A) = ι_f(A)`.)
pub fn invertible_closure_member(a: &OperatorDescriptor) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::precondition(format!(
            "invertibles need dim H = dim K, got {} and {}",
            a.dim_h(),
            a.dim_k()
        )));
    }
    let idx = a.indices();
    Ok(idx.iota_i == idx.iota_f)
}

/// Which description of the orbit closure applies on a separable space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparableClass {
    /// Closure is every operator of rank at most `rank`.
    FiniteRank(u64),
    /// Closure is the compact operators.
    CompactInfRank,
    /// Closure is the non-semi-Fredholm operators.
    NonSemiFredholm,
    /// Closure is the non-semi-Fredholm operators together with semi-Fredholm
    /// operators of index `ind` and `ι_m ≥ iota_m`.
    SemiFredholm { ind: SignedIndex, iota_m: Cardinal },
}

impl fmt::Display for SeparableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparableClass::FiniteRank(r) => write!(f, "finite rank {r}"),
            SeparableClass::CompactInfRank => f.write_str("compact of infinite rank"),
            SeparableClass::NonSemiFredholm => f.write_str("noncompact, non-semi-Fredholm"),
            SeparableClass::SemiFredholm { ind, iota_m } => {
                write!(f, "semi-Fredholm (ind = {ind}, iota_m = {iota_m})")
            }
        }
    }
}

pub fn classify_separable(a: &OperatorDescriptor) -> Result<SeparableClass> {
    let aleph_0 = Cardinal::aleph_0();
    if a.dim_h() != aleph_0 || a.dim_k() != aleph_0 {
        return Err(Error::precondition(format!(
            "separable classification needs dim H = dim K = aleph_0, got {} and {}",
            a.dim_h(),
            a.dim_k()
        )));
    }
    let idx = a.indices();
    Ok(if let Some(r) = idx.iota_r.as_finite() {
        SeparableClass::FiniteRank(r)
    } else if a.is_compact() {
        SeparableClass::CompactInfRank
    } else {
        match idx.ind() {
            SignedIndex::Undefined => SeparableClass::NonSemiFredholm,
            ind => SeparableClass::SemiFredholm {
                ind,
                iota_m: idx.iota_m().clone(),
            },
        }
    })
}

/// Whether `A` has a neighbourhood all of whose members have `A` in their
/// orbit closure. This holds exactly under `ι_b(A) = 1`.
pub fn gg_open_neighbourhood_claim(a: &OperatorDescriptor) -> bool {
    a.indices().iota_b == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cardinal::default_universe;

    fn c(s: &str) -> Cardinal {
        s.parse().unwrap()
    }

    fn t(l: &str, m: &str, r: &str) -> LambdaTriple {
        LambdaTriple::new(c(l), c(m), c(r))
    }

    fn id() -> OperatorDescriptor {
        OperatorDescriptor::identity(c("aleph_0"))
    }

    fn compact() -> OperatorDescriptor {
        OperatorDescriptor::compact_diagonal()
    }

    fn rank(r: u64, n: u64) -> OperatorDescriptor {
        OperatorDescriptor::finite_rank(r, Cardinal::Finite(n), Cardinal::Finite(n)).unwrap()
    }

    #[test]
    fn lambda_member_examples() {
        let zero = OperatorDescriptor::zero(c("aleph_0"), c("aleph_1"));
        assert!(lambda_member(&zero, &t("aleph_0", "0", "aleph_1")));
        assert!(!lambda_member(&zero, &t("aleph_0", "1", "aleph_1")));
        assert!(lambda_member(&id(), &t("aleph_0", "5", "aleph_0")));
        assert!(!lambda_member(
            &compact(),
            &t("aleph_0", "aleph_0", "aleph_0")
        ));
    }

    #[test]
    fn lambda_enumerate_examples() {
        let u: Vec<Cardinal> = (0..=3).map(Cardinal::Finite).collect();
        assert_eq!(
            lambda_enumerate(&rank(2, 3), &u),
            vec![t("1", "2", "1"), t("2", "1", "2"), t("3", "0", "3")]
        );
        let zero = OperatorDescriptor::zero(c("2"), c("2"));
        assert_eq!(lambda_enumerate(&zero, &u), vec![t("2", "0", "2")]);
        let u = vec![c("0"), c("1"), c("aleph_0")];
        let mut expected = vec![
            t("aleph_0", "0", "aleph_0"),
            t("aleph_0", "1", "aleph_0"),
            t("0", "aleph_0", "0"),
            t("1", "aleph_0", "1"),
            t("aleph_0", "aleph_0", "aleph_0"),
        ];
        expected.sort();
        assert_eq!(lambda_enumerate(&id(), &u), expected);
    }

    #[test]
    fn closure_examples() {
        let v = closure_gg_contains(&id(), &compact()).unwrap();
        assert!(v.member);
        assert_eq!(v.alpha, Some(c("aleph_0")));

        let v = closure_gg_contains(&compact(), &id()).unwrap();
        assert_eq!(v.failed, Some(Condition::BinaryIndex));

        let v = closure_gg_contains(&rank(2, 3), &rank(3, 3)).unwrap();
        assert_eq!(v.failed, Some(Condition::RangeIndex));
    }

    #[test]
    fn lambda_route_examples() {
        let pairs = [
            (id(), compact(), true),
            (compact(), id(), false),
            (rank(2, 3), rank(3, 3), false),
        ];
        for (a, cc, expect) in pairs {
            let u = adequate_universe(&[&a, &cc]);
            assert_eq!(closure_gg_contains_via_lambda(&a, &cc, &u), expect);
            assert!(closure_gg_contains_via_lambda(&a, &a, &u));
        }
        let zero = OperatorDescriptor::zero(c("3"), c("3"));
        let u = adequate_universe(&[&zero]);
        assert!(!closure_gg_contains_via_lambda(&zero, &rank(1, 3), &u));
    }

    #[test]
    fn dimension_mismatch_is_a_precondition_error() {
        let err = closure_gg_contains(&id(), &rank(1, 3)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(closure_gg_equal(&id(), &rank(1, 3)).is_err());
    }

    #[test]
    fn equality_examples() {
        // Two different compact profiles with the same index vector.
        let other = OperatorDescriptor::new(
            c("0"),
            c("0"),
            crate::profile::RangeProfile::canonicalize(
                vec![crate::profile::RawBlock::new(c("5"), 2)],
                crate::profile::Tail::Repeat(c("3")),
            )
            .unwrap(),
        );
        assert_ne!(other, compact());
        assert!(closure_gg_equal(&compact(), &other).unwrap());
        assert!(!closure_gg_equal(&id(), &OperatorDescriptor::unilateral_shift()).unwrap());
        let s = OperatorDescriptor::unilateral_shift();
        assert!(!closure_gg_equal(&s, &s.adjoint()).unwrap());
    }

    #[test]
    fn invertible_closure_examples() {
        assert!(invertible_closure_member(&compact()).unwrap());
        assert!(!invertible_closure_member(&OperatorDescriptor::unilateral_shift()).unwrap());
        for r in 0..=4 {
            assert!(invertible_closure_member(&rank(r, 4)).unwrap());
        }
        let rect = OperatorDescriptor::zero(c("2"), c("3"));
        assert!(invertible_closure_member(&rect).is_err());
    }

    #[test]
    fn separable_classification() {
        let r2 = OperatorDescriptor::finite_rank(2, c("aleph_0"), c("aleph_0")).unwrap();
        assert_eq!(
            classify_separable(&r2).unwrap(),
            SeparableClass::FiniteRank(2)
        );
        assert_eq!(
            classify_separable(&compact()).unwrap(),
            SeparableClass::CompactInfRank
        );
        assert_eq!(
            classify_separable(&OperatorDescriptor::unilateral_shift()).unwrap(),
            SeparableClass::SemiFredholm {
                ind: SignedIndex::Minus(c("1")),
                iota_m: c("0")
            }
        );
        // I ⊕ compact on ℓ² ⊕ ℓ²: noncompact, nonclosed range.
        let mixed = OperatorDescriptor::new(
            c("0"),
            c("0"),
            crate::profile::RangeProfile::canonicalize(
                vec![crate::profile::RawBlock::new(c("aleph_0"), 1)],
                crate::profile::Tail::Repeat(c("1")),
            )
            .unwrap(),
        );
        assert_eq!(
            classify_separable(&mixed).unwrap(),
            SeparableClass::NonSemiFredholm
        );
        assert!(classify_separable(&OperatorDescriptor::identity(c("aleph_1"))).is_err());
    }

    #[test]
    fn open_neighbourhood_claims() {
        assert!(gg_open_neighbourhood_claim(&id()));
        assert!(!gg_open_neighbourhood_claim(&compact()));
        assert!(gg_open_neighbourhood_claim(&rank(2, 5)));
    }

    #[test]
    fn default_universe_is_sorted_and_distinct() {
        let u = default_universe();
        assert!(u.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(u.len(), 9);
    }
}
