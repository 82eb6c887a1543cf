//! Exact combinatorics of crystallographic root systems.
//!
//! The crate builds irreducible root systems of types A–G (rank at most 8)
//! and implements, over exact rational arithmetic:
//!
//! - the positive-root poset with its ideals and antichains, filtered
//!   enumeration, and the product formulas counting them ([`posets`]);
//! - affine Weyl group elements `w = v·t_r` with both actions, inversion
//!   sets, bi-convexity, and the dominant element classes attached to ideals
//!   and short antichains ([`affine`]);
//! - exact lattice-point enumeration in the simplices that parametrize those
//!   classes ([`halfspace`]);
//! - Catalan, semi-Catalan, Shi and semi-Shi arrangements, characteristic
//!   polynomials by finite-field point counting with an intersection-poset
//!   cross-check, region counts, and the antichain-to-region bijection
//!   ([`arrangements`]);
//! - a machine-readable verification suite over all of the above
//!   ([`verify`]).
//!
//! There is no floating point and no randomness anywhere: all outputs are
//! byte-deterministic for a fixed input.

pub mod affine;
pub mod arrangements;
pub mod error;
pub mod halfspace;
pub mod linalg;
pub mod poly;
pub mod posets;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
pub use rootsys::{build_root_system, RootSystem, SystemId, TypeLetter};
