//! Cardinal numbers, signed cardinal differences and solution sets of `x + α = y`.
//!
//! A [`Cardinal`] is either a natural number or an aleph `ℵ_o` whose index `o`
//! is an ordinal below ω^ω. Sums follow the absorption law (`a + b = max(a, b)`
//! once either side is infinite), which is all of cardinal addition. Regular
//! limit alephs (weak inaccessibles) have no name in this notation.

mod ordinal;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use ordinal::OrdinalCnf;

/// Finite naturals sort below every aleph; alephs sort by their index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(u64),
    Aleph(OrdinalCnf),
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);

    pub fn finite(n: u64) -> Self {
        Cardinal::Finite(n)
    }

    /// `ℵ_n` for a finite index.
    pub fn aleph(n: u64) -> Self {
        Cardinal::Aleph(OrdinalCnf::finite(n))
    }

    pub fn aleph_0() -> Self {
        Self::aleph(0)
    }

    /// `ℵ_ω`, the least aleph of countable cofinality above ℵ₀.
    pub fn aleph_omega() -> Self {
        Cardinal::Aleph(OrdinalCnf::omega())
    }

    pub fn aleph_at(index: OrdinalCnf) -> Self {
        Cardinal::Aleph(index)
    }

    pub fn is_zero(&self) -> bool {
        *self == Cardinal::ZERO
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(*n),
            Cardinal::Aleph(_) => None,
        }
    }

    /// Cardinal sum.
    pub fn add(&self, rhs: &Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                Cardinal::Finite(a.checked_add(*b).expect("finite cardinal overflow"))
            }
            _ => self.max(rhs).clone(),
        }
    }

    /// `self · n` for a natural `n` (n copies summed).
    pub fn times(&self, n: u64) -> Cardinal {
        match self {
            _ if n == 0 => Cardinal::ZERO,
            Cardinal::Finite(a) => {
                Cardinal::Finite(a.checked_mul(n).expect("finite cardinal overflow"))
            }
            aleph => aleph.clone(),
        }
    }

    /// Signed difference `self − rhs`; [`SignedIndex::Undefined`] when both
    /// sides are the same infinite cardinal.
    pub fn sub(&self, rhs: &Cardinal) -> SignedIndex {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                if a >= b {
                    SignedIndex::Plus(Cardinal::Finite(a - b))
                } else {
                    SignedIndex::Minus(Cardinal::Finite(b - a))
                }
            }
            _ => match self.cmp(rhs) {
                Ordering::Greater => SignedIndex::Plus(self.clone()),
                Ordering::Less => SignedIndex::Minus(rhs.clone()),
                Ordering::Equal => SignedIndex::Undefined,
            },
        }
    }

    /// The immediate successor cardinal.
    pub fn successor(&self) -> Cardinal {
        match self {
            Cardinal::Finite(n) => {
                Cardinal::Finite(n.checked_add(1).expect("finite cardinal overflow"))
            }
            Cardinal::Aleph(idx) => Cardinal::Aleph(idx.successor()),
        }
    }

    /// `ℵ_λ` with `λ` a limit ordinal. In this notation every such aleph has
    /// countable cofinality.
    pub fn is_limit_aleph_countable_cofinality(&self) -> bool {
        matches!(self, Cardinal::Aleph(idx) if idx.is_limit())
    }

    /// All `α` with `self + α = target`.
    pub fn solve_add(&self, target: &Cardinal) -> AlphaSolutionSet {
        if target < self {
            return AlphaSolutionSet::Empty;
        }
        match (self, target) {
            (Cardinal::Finite(x), Cardinal::Finite(y)) => {
                AlphaSolutionSet::Point(Cardinal::Finite(y - x))
            }
            (x, y) if x.is_infinite() && x == y => AlphaSolutionSet::ClosedInterval {
                lo: Cardinal::ZERO,
                hi: x.clone(),
            },
            (_, y) => AlphaSolutionSet::Point(y.clone()),
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph(idx) => write!(f, "aleph_{idx}"),
        }
    }
}

impl FromStr for Cardinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_cardinal(s)
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::Finite(n)
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Sum of a stream of blocks, each a value repeated `count` times.
///
/// A block repeated ω times with value `v ≥ 1` contributes `max(ℵ₀, v)`.
pub fn sum_stream<'a>(blocks: impl IntoIterator<Item = (&'a Cardinal, Count)>) -> Cardinal {
    blocks
        .into_iter()
        .fold(Cardinal::ZERO, |acc, (value, count)| {
            let part = match count {
                Count::Finite(n) => value.times(n),
                Count::Omega if value.is_zero() => Cardinal::ZERO,
                Count::Omega => value.clone().max(Cardinal::aleph_0()),
            };
            acc.add(&part)
        })
}

/// Multiplicity of a block in a [`sum_stream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(u64),
    Omega,
}

/// A cardinal, the negative of a nonzero cardinal, or undefined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedIndex {
    Plus(Cardinal),
    Minus(Cardinal),
    Undefined,
}

impl SignedIndex {
    pub const ZERO: SignedIndex = SignedIndex::Plus(Cardinal::ZERO);

    /// `-c`, normalising `-0` to `+0`.
    pub fn negative(c: Cardinal) -> Self {
        if c.is_zero() {
            SignedIndex::ZERO
        } else {
            SignedIndex::Minus(c)
        }
    }

    pub fn is_defined(&self) -> bool {
        !matches!(self, SignedIndex::Undefined)
    }

    /// `|γ|`, absent for undefined.
    pub fn magnitude(&self) -> Option<&Cardinal> {
        match self {
            SignedIndex::Plus(c) | SignedIndex::Minus(c) => Some(c),
            SignedIndex::Undefined => None,
        }
    }

    pub fn negate(&self) -> SignedIndex {
        match self {
            SignedIndex::Plus(c) => SignedIndex::negative(c.clone()),
            SignedIndex::Minus(c) => SignedIndex::Plus(c.clone()),
            SignedIndex::Undefined => SignedIndex::Undefined,
        }
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedIndex::Plus(c) => write!(f, "{c}"),
            SignedIndex::Minus(c) => write!(f, "-{c}"),
            SignedIndex::Undefined => f.write_str("undefined"),
        }
    }
}

impl FromStr for SignedIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_signed(s)
    }
}

impl Serialize for SignedIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `{α : x + α = y}` is always empty, a single cardinal, or `[0, x]` for
/// `x = y` infinite. Intersections stay within the same three shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaSolutionSet {
    Empty,
    Point(Cardinal),
    ClosedInterval { lo: Cardinal, hi: Cardinal },
}

impl AlphaSolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, AlphaSolutionSet::Empty)
    }

    pub fn contains(&self, c: &Cardinal) -> bool {
        match self {
            AlphaSolutionSet::Empty => false,
            AlphaSolutionSet::Point(p) => p == c,
            AlphaSolutionSet::ClosedInterval { lo, hi } => lo <= c && c <= hi,
        }
    }

    /// Least member.
    pub fn least(&self) -> Option<&Cardinal> {
        match self {
            AlphaSolutionSet::Empty => None,
            AlphaSolutionSet::Point(p) => Some(p),
            AlphaSolutionSet::ClosedInterval { lo, .. } => Some(lo),
        }
    }

    fn bounds(&self) -> Option<(&Cardinal, &Cardinal)> {
        match self {
            AlphaSolutionSet::Empty => None,
            AlphaSolutionSet::Point(p) => Some((p, p)),
            AlphaSolutionSet::ClosedInterval { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn intersect(&self, other: &AlphaSolutionSet) -> AlphaSolutionSet {
        let (Some((lo1, hi1)), Some((lo2, hi2))) = (self.bounds(), other.bounds()) else {
            return AlphaSolutionSet::Empty;
        };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        match lo.cmp(hi) {
            Ordering::Greater => AlphaSolutionSet::Empty,
            Ordering::Equal => AlphaSolutionSet::Point(lo.clone()),
            Ordering::Less => AlphaSolutionSet::ClosedInterval {
                lo: lo.clone(),
                hi: hi.clone(),
            },
        }
    }
}

impl fmt::Display for AlphaSolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSolutionSet::Empty => f.write_str("{}"),
            AlphaSolutionSet::Point(p) => write!(f, "{{{p}}}"),
            AlphaSolutionSet::ClosedInterval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// The default verification universe `{0, 1, 2, 3, ℵ₀, ℵ₁, ℵ₂, ℵ_ω, ℵ_{ω+1}}`.
pub fn default_universe() -> Vec<Cardinal> {
    let mut u: Vec<Cardinal> = (0..=3).map(Cardinal::Finite).collect();
    u.extend([
        Cardinal::aleph(0),
        Cardinal::aleph(1),
        Cardinal::aleph(2),
        Cardinal::aleph_omega(),
        Cardinal::aleph_omega().successor(),
    ]);
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cardinal {
        s.parse().unwrap()
    }

    /// A universe with gaps on both sides of every limit.
    fn universe() -> Vec<Cardinal> {
        let mut u: Vec<Cardinal> = (0..=6).map(Cardinal::Finite).collect();
        for s in [
            "aleph_0",
            "aleph_1",
            "aleph_2",
            "aleph_w",
            "aleph_w+1",
            "aleph_w*2",
            "aleph_w^2",
        ] {
            u.push(c(s));
        }
        u
    }

    #[test]
    fn add_examples() {
        assert_eq!(c("2").add(&c("3")), c("5"));
        assert_eq!(c("aleph_0").add(&c("7")), c("aleph_0"));
        assert_eq!(c("aleph_1").add(&c("aleph_0")), c("aleph_1"));
    }

    #[test]
    fn sub_examples() {
        assert_eq!(c("5").sub(&c("3")), SignedIndex::Plus(c("2")));
        assert_eq!(
            c("aleph_1").sub(&c("aleph_0")),
            SignedIndex::Plus(c("aleph_1"))
        );
        assert_eq!(c("3").sub(&c("aleph_0")), SignedIndex::Minus(c("aleph_0")));
        assert_eq!(c("aleph_0").sub(&c("aleph_0")), SignedIndex::Undefined);
        assert_eq!(c("4").sub(&c("4")), SignedIndex::ZERO);
    }

    #[test]
    fn sum_stream_examples() {
        assert_eq!(sum_stream([(&c("1"), Count::Omega)]), c("aleph_0"));
        assert_eq!(
            sum_stream([(&c("2"), Count::Finite(3)), (&c("0"), Count::Omega)]),
            c("6")
        );
        assert_eq!(
            sum_stream([(&c("aleph_1"), Count::Finite(1)), (&c("1"), Count::Omega)]),
            c("aleph_1")
        );
    }

    #[test]
    fn successor_examples() {
        assert_eq!(c("4").successor(), c("5"));
        assert_eq!(c("aleph_0").successor(), c("aleph_1"));
        assert_eq!(c("aleph_w").successor(), c("aleph_w+1"));
    }

    #[test]
    fn cofinality_examples() {
        assert!(c("aleph_w").is_limit_aleph_countable_cofinality());
        assert!(c("aleph_w*2").is_limit_aleph_countable_cofinality());
        assert!(!c("aleph_1").is_limit_aleph_countable_cofinality());
        assert!(!c("aleph_0").is_limit_aleph_countable_cofinality());
        assert!(!c("12").is_limit_aleph_countable_cofinality());
    }

    #[test]
    fn solve_add_examples() {
        assert_eq!(c("2").solve_add(&c("5")), AlphaSolutionSet::Point(c("3")));
        assert_eq!(
            c("aleph_0").solve_add(&c("aleph_0")),
            AlphaSolutionSet::ClosedInterval {
                lo: c("0"),
                hi: c("aleph_0")
            }
        );
        assert_eq!(
            c("aleph_1").solve_add(&c("aleph_0")),
            AlphaSolutionSet::Empty
        );
    }

    #[test]
    fn add_laws_over_universe() {
        let u = universe();
        for a in &u {
            for b in &u {
                assert_eq!(a.add(b), b.add(a));
                for d in &u {
                    assert_eq!(a.add(b).add(d), a.add(&b.add(d)));
                    if b <= d {
                        assert!(a.add(b) <= a.add(d));
                    }
                }
            }
        }
    }

    #[test]
    fn sub_magnitude_is_max_when_infinite() {
        let u = universe();
        for a in &u {
            for b in &u {
                let diff = a.sub(b);
                if a != b && (a.is_infinite() || b.is_infinite()) {
                    assert_eq!(diff.magnitude(), Some(a.max(b)));
                }
                if a == b && a.is_infinite() {
                    assert_eq!(diff, SignedIndex::Undefined);
                }
            }
        }
    }

    #[test]
    fn solve_add_is_exact_over_universe() {
        let u = universe();
        for x in &u {
            for y in &u {
                let set = x.solve_add(y);
                assert_eq!(!set.is_empty(), y >= x, "{x} {y}");
                for a in &u {
                    assert_eq!(set.contains(a), &x.add(a) == y, "{x} + {a} = {y}?");
                }
            }
        }
    }

    #[test]
    fn successor_is_immediate_over_universe() {
        let u = universe();
        for a in &u {
            let s = a.successor();
            assert!(s > *a);
            assert!(u.iter().all(|b| !(a < b && b < &s)));
        }
    }

    #[test]
    fn limit_indices_are_limits() {
        // Every limit index has an increasing sequence below it: check that
        // no finite step of successors from below reaches it.
        for s in ["aleph_w", "aleph_w*2", "aleph_w^2", "aleph_w^3+w"] {
            let lim = c(s);
            assert!(lim.is_limit_aleph_countable_cofinality());
            let Cardinal::Aleph(idx) = &lim else {
                unreachable!()
            };
            assert_eq!(idx.constant(), 0);
        }
    }

    #[test]
    fn intersections() {
        let a = AlphaSolutionSet::ClosedInterval {
            lo: c("0"),
            hi: c("aleph_1"),
        };
        let b = AlphaSolutionSet::Point(c("aleph_0"));
        assert_eq!(a.intersect(&b), b);
        assert_eq!(
            b.intersect(&AlphaSolutionSet::Point(c("3"))),
            AlphaSolutionSet::Empty
        );
        let d = AlphaSolutionSet::ClosedInterval {
            lo: c("0"),
            hi: c("aleph_0"),
        };
        assert_eq!(a.intersect(&d), d);
    }

    #[test]
    fn serde_uses_text_grammar() {
        let v: Vec<Cardinal> = serde_json::from_str(r#"["3","aleph_w+2"]"#).unwrap();
        assert_eq!(v, vec![c("3"), c("aleph_w+2")]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["3","aleph_w+2"]"#);
    }
}
