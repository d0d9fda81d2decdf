//! Analytic spread and reduction number of the ideal of maximal minors of
//! the first `u` rows of a generic matrix with vanishing-minor conditions.
//!
//! The closed forms live in [`invariants`]. Every value they produce can be
//! rechecked against the lattice of minors ([`minors`]), its poset of
//! join-irreducibles, and Hibi-ring Hilbert data ([`hibi`]). [`verify`]
//! bundles those cross-checks and the exhaustive parameter sweep.

pub mod error;
pub mod hibi;
pub mod invariants;
pub mod minors;
pub mod poset;
pub mod spec;
pub mod verify;

pub use error::{Error, PosetError, Result, SpecError};
pub use invariants::{full_report, InvariantReport};
pub use poset::Poset;
pub use spec::{ProblemSpec, Side};
