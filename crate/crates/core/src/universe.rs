//! Bounded families of descriptors for exhaustive checks.

use std::collections::{BTreeMap, HashSet};

use crate::cardinal::Cardinal;
use crate::descriptor::OperatorDescriptor;
use crate::profile::{RangeProfile, RawBlock, Tail};

/// Kernel and cokernel dimensions used by [`descriptors`].
pub fn side_dims() -> Vec<Cardinal> {
    ["0", "1", "2", "aleph_0", "aleph_1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Block values used by [`profiles`].
pub fn block_values() -> Vec<Cardinal> {
    ["1", "2", "aleph_0", "aleph_1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Every tail kind: zero, a repeated block value, and cofinal in `ℵ_ω`.
pub fn tails() -> Vec<Tail> {
    let mut out = vec![Tail::Zero];
    out.extend(block_values().into_iter().map(Tail::Repeat));
    out.push(Tail::CofinalIn(Cardinal::aleph_omega()));
    out
}

/// Distinct canonical profiles with at most two leading blocks of
/// multiplicity one, followed by any tail.
pub fn profiles() -> Vec<RangeProfile> {
    let values = block_values();
    let mut raws: Vec<Vec<RawBlock>> = vec![vec![]];
    for v in &values {
        raws.push(vec![RawBlock::new(v.clone(), 1)]);
        for w in &values {
            raws.push(vec![
                RawBlock::new(v.clone(), 1),
                RawBlock::new(w.clone(), 1),
            ]);
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for raw in raws {
        for tail in tails() {
            let p =
                RangeProfile::canonicalize(raw.clone(), tail).expect("universe tails are valid");
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// The standard descriptor universe: every kernel/cokernel pair from
/// [`side_dims`] with every profile from [`profiles`].
pub fn descriptors() -> Vec<OperatorDescriptor> {
    let profiles = profiles();
    let mut out = Vec::new();
    for n in side_dims() {
        for d in side_dims() {
            for p in &profiles {
                out.push(OperatorDescriptor::new(n.clone(), d.clone(), p.clone()));
            }
        }
    }
    out
}

/// Descriptors grouped by `(dim H, dim K)`, in a fixed order.
pub fn by_spaces(
    descs: &[OperatorDescriptor],
) -> BTreeMap<(Cardinal, Cardinal), Vec<&OperatorDescriptor>> {
    let mut groups: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for d in descs {
        groups.entry((d.dim_h(), d.dim_k())).or_default().push(d);
    }
    groups
}

/// One representative per `(dim H, dim K, indices)` class. Every decider in
/// this crate reads a descriptor only through these data.
pub fn index_representatives(descs: &[OperatorDescriptor]) -> Vec<OperatorDescriptor> {
    let mut seen = HashSet::new();
    descs
        .iter()
        .filter(|d| seen.insert((d.dim_h(), d.dim_k(), d.indices())))
        .cloned()
        .collect()
}
