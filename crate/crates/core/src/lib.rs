//! Degree-2 K3 surfaces built from cubic fourfolds containing a plane.
//!
//! The crate covers the whole chain: finite-field arithmetic ([`ff`]), exact
//! polynomials ([`mpoly`]), smoothness via Gröbner bases ([`groebner`]), the
//! fourfold-to-surface constructions ([`geometry`]), point counting and
//! Frobenius characteristic polynomials ([`counting`]), Picard lattice
//! certificates ([`lattices`]), quaternion-algebra local invariants
//! ([`brauer`]) and the end-to-end driver ([`pipeline`]).

pub mod ff;
pub mod mpoly;
pub mod groebner;
pub mod geometry;
pub mod counting;
pub mod lattices;
pub mod brauer;
pub mod pipeline;
mod serde_util;
