//! Symbolic operators and their indices.
//!
//! An [`OperatorDescriptor`] records `dim N(A)`, `dim (K ⊖ cl R(A))` and a
//! [`RangeProfile`] of `R(A)`. The dimensions of `H` and `K` are derived from
//! these, so `ι_i + ι_r = dim H` and `ι_f + ι_r = dim K` cannot fail.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cardinal::{Cardinal, SignedIndex};
use crate::error::{Error, Result};
use crate::profile::{ProfileJson, RangeProfile, Tail};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorDescriptor {
    nullity: Cardinal,
    codefect: Cardinal,
    profile: RangeProfile,
}

/// `(ι_r, ι_i, ι_f, ι_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexVector {
    pub iota_r: Cardinal,
    pub iota_i: Cardinal,
    pub iota_f: Cardinal,
    pub iota_b: u8,
}

impl IndexVector {
    /// `min(ι_i, ι_f)`.
    pub fn iota_m(&self) -> &Cardinal {
        (&self.iota_i).min(&self.iota_f)
    }

    /// `ι_r` if `ι_b = 0`, otherwise its successor.
    pub fn iota_big_r(&self) -> Cardinal {
        if self.iota_b == 0 {
            self.iota_r.clone()
        } else {
            self.iota_r.successor()
        }
    }

    pub fn ind(&self) -> SignedIndex {
        self.iota_i.sub(&self.iota_f)
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(iota_r = {}, iota_i = {}, iota_f = {}, iota_b = {})",
            self.iota_r, self.iota_i, self.iota_f, self.iota_b
        )
    }
}

impl OperatorDescriptor {
    pub fn new(nullity: Cardinal, codefect: Cardinal, profile: RangeProfile) -> Self {
        OperatorDescriptor {
            nullity,
            codefect,
            profile,
        }
    }

    /// The zero operator `H → K`.
    pub fn zero(dim_h: Cardinal, dim_k: Cardinal) -> Self {
        Self::new(dim_h, dim_k, RangeProfile::empty())
    }

    /// The identity on a space of dimension `dim`.
    pub fn identity(dim: Cardinal) -> Self {
        Self::new(Cardinal::ZERO, Cardinal::ZERO, RangeProfile::closed(dim))
    }

    /// A rank-`r` operator between spaces of the given dimensions.
    pub fn finite_rank(r: u64, dim_h: Cardinal, dim_k: Cardinal) -> Result<Self> {
        let rank = Cardinal::Finite(r);
        let nullity = residual(&dim_h, &rank, "dim_H")?;
        let codefect = residual(&dim_k, &rank, "dim_K")?;
        Ok(Self::new(nullity, codefect, RangeProfile::closed(rank)))
    }

    /// Injective compact operator with dense range on a separable space,
    /// e.g. `diag(1, 1/2, 1/3, …)`.
    pub fn compact_diagonal() -> Self {
        let profile = RangeProfile::canonicalize(Vec::new(), Tail::Repeat(Cardinal::finite(1)))
            .expect("repeat tail is valid");
        Self::new(Cardinal::ZERO, Cardinal::ZERO, profile)
    }

    /// The unilateral shift on a separable space.
    pub fn unilateral_shift() -> Self {
        Self::new(
            Cardinal::ZERO,
            Cardinal::finite(1),
            RangeProfile::closed(Cardinal::aleph_0()),
        )
    }

    pub fn nullity(&self) -> &Cardinal {
        &self.nullity
    }

    pub fn codefect(&self) -> &Cardinal {
        &self.codefect
    }

    pub fn profile(&self) -> &RangeProfile {
        &self.profile
    }

    pub fn dim_h(&self) -> Cardinal {
        self.nullity.add(&self.profile.total())
    }

    pub fn dim_k(&self) -> Cardinal {
        self.codefect.add(&self.profile.total())
    }

    pub fn is_square(&self) -> bool {
        self.dim_h() == self.dim_k()
    }

    pub fn indices(&self) -> IndexVector {
        let p = self.profile.indices();
        IndexVector {
            iota_i: self.nullity.add(&p.ic),
            iota_f: self.codefect.add(&p.ic),
            iota_r: p.total,
            iota_b: p.b,
        }
    }

    /// `A*`: kernel and cokernel swap, the range is linearly isometric.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.codefect.clone(),
            self.nullity.clone(),
            self.profile.clone(),
        )
    }

    /// Least `α` such that `R(A)` has no complete subspace of dimension `α`.
    pub fn iota_big_r(&self) -> Cardinal {
        self.indices().iota_big_r()
    }

    pub fn iota_m(&self) -> Cardinal {
        self.indices().iota_m().clone()
    }

    /// Extended index `ι_i − ι_f`.
    pub fn ind(&self) -> SignedIndex {
        self.indices().ind()
    }

    /// Compact iff the range holds no infinite-dimensional complete subspace:
    /// all summands finite and the tail either absent or a finite repeat.
    pub fn is_compact(&self) -> bool {
        self.profile.blocks().iter().all(|b| b.value.is_finite())
            && match self.profile.tail() {
                Tail::Zero => true,
                Tail::Repeat(v) => v.is_finite(),
                Tail::CofinalIn(_) => false,
            }
    }

    pub fn is_finite_rank(&self) -> bool {
        self.profile.total().is_finite()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DescriptorJson::from_descriptor(self))
            .expect("descriptor serialisation cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&DescriptorJson::from_descriptor(self))
            .expect("descriptor serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DescriptorJson = serde_json::from_str(text)?;
        raw.into_descriptor()
    }
}

fn residual(dim: &Cardinal, rank: &Cardinal, field: &str) -> Result<Cardinal> {
    if dim < rank {
        return Err(Error::validation(
            field,
            format!("{dim} is smaller than the rank {rank}"),
        ));
    }
    match (dim, rank) {
        (Cardinal::Finite(d), Cardinal::Finite(r)) => Ok(Cardinal::Finite(d - r)),
        _ => Ok(dim.clone()),
    }
}

impl fmt::Display for OperatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nullity {}, codefect {}, range {}",
            self.nullity, self.codefect, self.profile
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorJson {
    nullity: Cardinal,
    codefect: Cardinal,
    #[serde(default)]
    profile: Option<ProfileJson>,
    #[serde(rename = "dim_H", default, skip_serializing_if = "Option::is_none")]
    dim_h: Option<Cardinal>,
    #[serde(rename = "dim_K", default, skip_serializing_if = "Option::is_none")]
    dim_k: Option<Cardinal>,
}

impl DescriptorJson {
    fn from_descriptor(d: &OperatorDescriptor) -> Self {
        DescriptorJson {
            nullity: d.nullity.clone(),
            codefect: d.codefect.clone(),
            profile: Some(ProfileJson::from_profile(&d.profile)),
            dim_h: Some(d.dim_h()),
            dim_k: Some(d.dim_k()),
        }
    }

    fn into_descriptor(self) -> Result<OperatorDescriptor> {
        let profile = match self.profile {
            Some(p) => p.into_profile()?,
            None => RangeProfile::empty(),
        };
        let d = OperatorDescriptor::new(self.nullity, self.codefect, profile);
        for (field, stated, derived, parts) in [
            ("dim_H", self.dim_h, d.dim_h(), "nullity + range dimension"),
            ("dim_K", self.dim_k, d.dim_k(), "codefect + range dimension"),
        ] {
            if let Some(stated) = stated {
                if stated != derived {
                    return Err(Error::validation(
                        field,
                        format!("{field} = {stated} but {parts} = {derived}"),
                    ));
                }
            }
        }
        Ok(d)
    }
}
