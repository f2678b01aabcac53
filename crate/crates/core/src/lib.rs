//! Orbit closures of bounded operators between Hilbert spaces of arbitrary
//! dimension, decided through cardinal-valued indices.
//!
//! An operator is described by an [`OperatorDescriptor`]: nullity, codefect
//! and the [`RangeProfile`] of its range. [`orbit`] decides membership in
//! closures of two-sided orbits, [`fredholm`] handles index regions and
//! closed ideals, and [`matrix`] provides a finite-dimensional lab with its
//! own numerical deciders. The guide in `book/` walks through all of it.
//!
//! ```
//! use opclosure::orbit::closure_gg_contains;
//! use opclosure::{Cardinal, OperatorDescriptor};
//!
//! let id = OperatorDescriptor::identity(Cardinal::aleph_0());
//! let v = closure_gg_contains(&id, &OperatorDescriptor::unilateral_shift()).unwrap();
//! assert!(!v.member);
//! ```

pub mod cardinal;
pub mod cli;
pub mod descriptor;
pub mod error;
pub mod fredholm;
pub mod orbit;
pub mod profile;
pub mod universe;

pub use cardinal::{AlphaSolutionSet, Cardinal, Count, SignedIndex};
pub use descriptor::{IndexVector, OperatorDescriptor};
pub use error::{Error, Result};
pub use profile::{Block, RangeProfile, RawBlock, Tail};
pub mod matrix;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cardinals.md")]
    mod cardinals {}
    #[doc = include_str!("../../../book/src/ranges.md")]
    mod ranges {}
    #[doc = include_str!("../../../book/src/indices.md")]
    mod indices {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/fredholm.md")]
    mod fredholm {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
