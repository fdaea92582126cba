//! The group ring `k[G]`, matrices over it, presented modules, and the
//! transports of a presentation to finite-dimensional linear algebra.

mod element;
mod matrix;
mod transport;

pub use element::GroupRingElement;
pub use matrix::{GroupRingMatrix, PresentedModule};
pub use transport::{compress_to_folner, induce_to_quotient, restrict_scalars, support_radius, Subgroup};
