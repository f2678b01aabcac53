//! Finite encodings of operator ranges.
//!
//! An operator range is `𝒮(H₁, H₂, …)`: vectors `Σ xₙ` with `xₙ ∈ Hₙ` and
//! `Σ 4ⁿ‖xₙ‖² < ∞` for mutually orthogonal closed subspaces `Hₙ`. Up to the
//! indices we care about, only the sequence `(dim Hₙ)` matters, and a
//! [`RangeProfile`] stores it as finitely many blocks followed by a tail:
//!
//! * [`Tail::Zero`]: the sequence is eventually zero (the range is closed),
//! * [`Tail::Repeat`]: one value repeated ω times,
//! * [`Tail::CofinalIn`]: a strictly increasing sequence of alephs whose
//!   supremum is a limit aleph of countable cofinality.
//!
//! The index of incompleteness is the least tail sum `Σ_{n≥m} dim Hₙ`, and the
//! binary index is 1 iff some `dim Hⱼ` equals the dimension of the closure.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cardinal::{sum_stream, Cardinal, Count};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub value: Cardinal,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    Zero,
    Repeat(Cardinal),
    CofinalIn(Cardinal),
}

/// A block as written by a user, before canonicalisation. An ω count is
/// folded into the tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBlock {
    pub value: Cardinal,
    pub count: Count,
}

impl RawBlock {
    pub fn new(value: Cardinal, count: u64) -> Self {
        RawBlock {
            value,
            count: Count::Finite(count),
        }
    }

    pub fn repeated(value: Cardinal) -> Self {
        RawBlock {
            value,
            count: Count::Omega,
        }
    }
}

/// Canonical profile: no zero-valued or zero-count blocks, no two adjacent
/// blocks with the same value, and a validated tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RangeProfile {
    blocks: Vec<Block>,
    tail: Tail,
}

/// `(dim of closure, IC, 𝔟)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileIndices {
    pub total: Cardinal,
    pub ic: Cardinal,
    pub b: u8,
}

impl RangeProfile {
    /// The zero space.
    pub fn empty() -> Self {
        RangeProfile {
            blocks: Vec::new(),
            tail: Tail::Zero,
        }
    }

    /// A closed range of the given dimension.
    pub fn closed(dim: Cardinal) -> Self {
        Self::canonicalize(vec![RawBlock::new(dim, 1)], Tail::Zero)
            .expect("a single block is always canonicalisable")
    }

    pub fn new(blocks: Vec<Block>, tail: Tail) -> Result<Self> {
        let raw = blocks
            .into_iter()
            .map(|b| RawBlock::new(b.value, b.count))
            .collect();
        Self::canonicalize(raw, tail)
    }

    /// Drops empty blocks, merges adjacent equal values, folds ω-count blocks
    /// into the tail and validates it.
    pub fn canonicalize(raw: Vec<RawBlock>, tail: Tail) -> Result<Self> {
        let mut tail = validate_tail(tail)?;
        let mut blocks: Vec<Block> = Vec::with_capacity(raw.len());
        for RawBlock { value, count } in raw {
            if value.is_zero() {
                continue;
            }
            match count {
                Count::Finite(0) => {}
                Count::Finite(n) => match blocks.last_mut() {
                    Some(last) if last.value == value => {
                        last.count = last.count.checked_add(n).expect("block count overflow");
                    }
                    _ => blocks.push(Block { value, count: n }),
                },
                Count::Omega => tail = merge_tails(tail, Tail::Repeat(value)),
            }
        }
        Ok(RangeProfile { blocks, tail })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Dimension of the closure: the sum of every `dim Hₙ`.
    pub fn total(&self) -> Cardinal {
        let finite = sum_stream(
            self.blocks
                .iter()
                .map(|b| (&b.value, Count::Finite(b.count))),
        );
        finite.add(&self.tail_sum())
    }

    /// Every suffix lying inside the tail has this sum.
    fn tail_sum(&self) -> Cardinal {
        match &self.tail {
            Tail::Zero => Cardinal::ZERO,
            Tail::Repeat(v) => sum_stream([(v, Count::Omega)]),
            Tail::CofinalIn(limit) => limit.clone(),
        }
    }

    /// Index of incompleteness: the least suffix sum. Suffixes starting in the
    /// blocks only add to the tail's sum, so the minimum is the tail's.
    pub fn ic(&self) -> Cardinal {
        self.tail_sum()
    }

    /// Binary index.
    pub fn b(&self) -> u8 {
        let total = self.total();
        // Finite-dimensional ranges are complete, hence contain their closure.
        if total.is_finite() {
            return 1;
        }
        let attained = self.blocks.iter().any(|b| b.value == total)
            || matches!(&self.tail, Tail::Repeat(v) if *v == total);
        u8::from(attained)
    }

    pub fn indices(&self) -> ProfileIndices {
        ProfileIndices {
            total: self.total(),
            ic: self.ic(),
            b: self.b(),
        }
    }

    /// Whether the range contains a complete (closed) subspace of dimension `beta`.
    pub fn contains_complete_subspace_of_dim(&self, beta: &Cardinal) -> bool {
        let total = self.total();
        *beta < total || (*beta == total && self.b() == 1)
    }

    pub fn is_closed(&self) -> bool {
        self.tail == Tail::Zero
    }
}

fn validate_tail(tail: Tail) -> Result<Tail> {
    match tail {
        Tail::Repeat(v) if v.is_zero() => Ok(Tail::Zero),
        Tail::CofinalIn(limit) if !limit.is_limit_aleph_countable_cofinality() => {
            Err(Error::validation(
                "profile.tail.value",
                format!("cofinal tail needs a limit aleph of countable cofinality, got {limit}"),
            ))
        }
        other => Ok(other),
    }
}

/// Combines two infinite families of summands into one tail with the same
/// total, IC and binary index.
fn merge_tails(a: Tail, b: Tail) -> Tail {
    use Tail::*;
    match (a, b) {
        (Zero, t) | (t, Zero) => t,
        (Repeat(v), Repeat(w)) => Repeat(v.max(w)),
        (Repeat(v), CofinalIn(l)) | (CofinalIn(l), Repeat(v)) => {
            if v < l {
                CofinalIn(l)
            } else {
                Repeat(v)
            }
        }
        (CofinalIn(l), CofinalIn(m)) => CofinalIn(l.max(m)),
    }
}

impl fmt::Display for RangeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}x{}", b.value, b.count)?;
        }
        f.write_str("]")?;
        match &self.tail {
            Tail::Zero => Ok(()),
            Tail::Repeat(v) => write!(f, " then {v} forever"),
            Tail::CofinalIn(l) => write!(f, " then cofinal in {l}"),
        }
    }
}

// JSON form: {"blocks":[{"value":"<cardinal>","count":<nat>|"inf"}],
//             "tail":{"kind":"zero"|"repeat"|"cofinal","value":"<cardinal>"}}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockJson {
    value: Cardinal,
    count: CountJson,
}

struct CountJson(Count);

impl Serialize for CountJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Count::Finite(n) => s.serialize_u64(n),
            Count::Omega => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for CountJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            N(u64),
            S(String),
        }
        match Either::deserialize(d)? {
            Either::N(n) => Ok(CountJson(Count::Finite(n))),
            Either::S(s) if s == "inf" => Ok(CountJson(Count::Omega)),
            Either::S(s) => Err(serde::de::Error::custom(format!(
                "count must be a natural or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TailJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<Cardinal>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ProfileJson {
    #[serde(default)]
    blocks: Vec<BlockJson>,
    #[serde(default)]
    tail: Option<TailJson>,
}

impl ProfileJson {
    pub(crate) fn into_profile(self) -> Result<RangeProfile> {
        let tail = match self.tail {
            None => Tail::Zero,
            Some(TailJson { kind, value }) => {
                let need = |v: Option<Cardinal>| {
                    v.ok_or_else(|| {
                        Error::validation(
                            "profile.tail.value",
                            format!("tail kind {kind:?} needs a value"),
                        )
                    })
                };
                match kind.as_str() {
                    "zero" => Tail::Zero,
                    "repeat" => Tail::Repeat(need(value)?),
                    "cofinal" => Tail::CofinalIn(need(value)?),
                    _ => {
                        return Err(Error::validation(
                            "profile.tail.kind",
                            format!("expected zero, repeat or cofinal, got {kind:?}"),
                        ))
                    }
                }
            }
        };
        let raw = self
            .blocks
            .into_iter()
            .map(|b| RawBlock {
                value: b.value,
                count: b.count.0,
            })
            .collect();
        RangeProfile::canonicalize(raw, tail)
    }

    pub(crate) fn from_profile(p: &RangeProfile) -> Self {
        let blocks = p
            .blocks
            .iter()
            .map(|b| BlockJson {
                value: b.value.clone(),
                count: CountJson(Count::Finite(b.count)),
            })
            .collect();
        let tail = match &p.tail {
            Tail::Zero => TailJson {
                kind: "zero".into(),
                value: None,
            },
            Tail::Repeat(v) => TailJson {
                kind: "repeat".into(),
                value: Some(v.clone()),
            },
            Tail::CofinalIn(l) => TailJson {
                kind: "cofinal".into(),
                value: Some(l.clone()),
            },
        };
        ProfileJson {
            blocks,
            tail: Some(tail),
        }
    }
}

impl Serialize for RangeProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileJson::from_profile(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RangeProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ProfileJson::deserialize(d)?
            .into_profile()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cardinal {
        s.parse().unwrap()
    }

    fn p(blocks: &[(&str, u64)], tail: Tail) -> RangeProfile {
        let raw = blocks
            .iter()
            .map(|(v, n)| RawBlock::new(c(v), *n))
            .collect();
        RangeProfile::canonicalize(raw, tail).unwrap()
    }

    #[test]
    fn total_examples() {
        assert_eq!(p(&[("aleph_0", 1)], Tail::Zero).total(), c("aleph_0"));
        assert_eq!(p(&[], Tail::Repeat(c("1"))).total(), c("aleph_0"));
        assert_eq!(
            p(&[("2", 1)], Tail::CofinalIn(c("aleph_w"))).total(),
            c("aleph_w")
        );
    }

    #[test]
    fn ic_examples() {
        assert_eq!(p(&[("aleph_0", 1)], Tail::Zero).ic(), c("0"));
        // Suffixes inside the repeated tail all sum to ℵ₀; prefixes only add.
        assert_eq!(p(&[("2", 3)], Tail::Repeat(c("1"))).ic(), c("aleph_0"));
        // Dropping the ℵ₁ block leaves ℵ₀.
        assert_eq!(
            p(&[("aleph_1", 1)], Tail::Repeat(c("1"))).ic(),
            c("aleph_0")
        );
    }

    #[test]
    fn b_examples() {
        assert_eq!(p(&[("aleph_0", 1)], Tail::Zero).b(), 1);
        assert_eq!(p(&[], Tail::Repeat(c("1"))).b(), 0);
        assert_eq!(p(&[], Tail::CofinalIn(c("aleph_w"))).b(), 0);
        assert_eq!(RangeProfile::empty().b(), 1);
        // Finite-dimensional and therefore complete, although no single block
        // carries the whole dimension.
        assert_eq!(p(&[("2", 1), ("3", 1)], Tail::Zero).b(), 1);
    }

    #[test]
    fn complete_subspace_examples() {
        let closed = p(&[("aleph_0", 1)], Tail::Zero);
        assert!(closed.contains_complete_subspace_of_dim(&c("aleph_0")));
        let diag = p(&[], Tail::Repeat(c("1")));
        assert!(!diag.contains_complete_subspace_of_dim(&c("aleph_0")));
        assert!(diag.contains_complete_subspace_of_dim(&c("5")));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            p(&[("2", 1), ("2", 2)], Tail::Zero).blocks(),
            &[Block {
                value: c("2"),
                count: 3
            }]
        );
        assert_eq!(
            p(&[("0", 5), ("3", 1)], Tail::Zero).blocks(),
            &[Block {
                value: c("3"),
                count: 1
            }]
        );
        let err = RangeProfile::canonicalize(vec![], Tail::CofinalIn(c("aleph_1"))).unwrap_err();
        assert!(
            matches!(err, Error::Validation { ref field, .. } if field == "profile.tail.value")
        );
        assert!(RangeProfile::canonicalize(vec![], Tail::CofinalIn(c("aleph_0"))).is_err());
        assert!(RangeProfile::canonicalize(vec![], Tail::CofinalIn(c("7"))).is_err());
    }

    #[test]
    fn omega_blocks_fold_into_tail() {
        let q = RangeProfile::canonicalize(
            vec![
                RawBlock::new(c("3"), 1),
                RawBlock::repeated(c("1")),
                RawBlock::repeated(c("2")),
            ],
            Tail::Zero,
        )
        .unwrap();
        assert_eq!(q.tail(), &Tail::Repeat(c("2")));
        assert_eq!(
            q.indices(),
            ProfileIndices {
                total: c("aleph_0"),
                ic: c("aleph_0"),
                b: 0
            }
        );

        let r = RangeProfile::canonicalize(
            vec![RawBlock::repeated(c("aleph_1"))],
            Tail::CofinalIn(c("aleph_w")),
        )
        .unwrap();
        assert_eq!(r.tail(), &Tail::CofinalIn(c("aleph_w")));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let q = p(
            &[("2", 1), ("2", 2), ("aleph_0", 1), ("0", 4), ("aleph_0", 2)],
            Tail::Repeat(c("3")),
        );
        let again = RangeProfile::new(q.blocks().to_vec(), q.tail().clone()).unwrap();
        assert_eq!(q, again);
        assert_eq!(q.blocks().len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"blocks":[{"value":"2","count":3},{"value":"1","count":"inf"}],"tail":{"kind":"zero"}}"#;
        let q: RangeProfile = serde_json::from_str(text).unwrap();
        assert_eq!(q.tail(), &Tail::Repeat(c("1")));
        let out = serde_json::to_string(&q).unwrap();
        assert_eq!(
            out,
            r#"{"blocks":[{"value":"2","count":3}],"tail":{"kind":"repeat","value":"1"}}"#
        );
        let back: RangeProfile = serde_json::from_str(&out).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn json_rejects_bad_tails() {
        let bad = r#"{"blocks":[],"tail":{"kind":"cofinal","value":"aleph_2"}}"#;
        assert!(serde_json::from_str::<RangeProfile>(bad).is_err());
        let bad = r#"{"blocks":[],"tail":{"kind":"spiral","value":"1"}}"#;
        assert!(serde_json::from_str::<RangeProfile>(bad).is_err());
        let bad = r#"{"blocks":[],"tail":{"kind":"repeat"}}"#;
        assert!(serde_json::from_str::<RangeProfile>(bad).is_err());
    }
}
