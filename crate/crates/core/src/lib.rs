//! Dimensions of finitely presented modules over group rings of amenable
//! groups.
//!
//! A module is presented as the cokernel of right multiplication by a matrix
//! `A` with entries in `k[G]`. The crate computes its dimension in several
//! ways: exactly through the Ore localization when `G = Z^d`, and by
//! approximation through Følner truncations, finite quotients and finite
//! index subgroups.

pub mod acceptance;
pub mod complex;
pub mod dimension;
pub mod error;
pub mod group;
pub mod json;
pub mod oracle;
pub mod random;
pub mod rank;
pub mod ring;
pub mod scalar;

mod arith;
mod gf;

pub use error::{Error, Result};
pub use group::{GroupDescriptor, GroupElement};
pub use ring::{GroupRingElement, GroupRingMatrix, PresentedModule, Subgroup};
pub use rank::{LaurentMatrix, PlainMatrix, RankAlgorithm, RankOptions, RankReport};
pub use scalar::{FieldDescriptor, FieldKind, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/rank.md")]
    mod rank {}
    #[doc = include_str!("../../../book/src/dimensions.md")]
    mod dimensions {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/acceptance.md")]
    mod acceptance {}
}
