//! Strongly regular graphs from finite classical polar spaces and
//! combinatorial designs, spectrum-preserving switching, and machine-
//! checkable verification certificates.
//!
//! The pipeline this crate supports end to end:
//!
//! 1. build a graph — the collinearity graph of a polar space, a polarity
//!    graph on non-isotropic points, or the block graph of a design
//!    ([`polar_graphs`], [`designs`]);
//! 2. construct a switching set from geometric or design data and apply
//!    WQH or GM switching ([`switching`]);
//! 3. certify what happened: strong-regularity parameters, cospectrality
//!    via characteristic polynomials over random primes, and
//!    non-isomorphism via invariant distributions ([`spectral`],
//!    [`certify`]).
//!
//! Everything is deterministic given its inputs and seeds; vertex orders
//! derive from a fixed field-element enumeration so graph6 output is
//! byte-stable across runs.

pub mod certify;
pub mod designs;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod polar_graphs;
pub mod spectral;
pub mod switching;

pub use field::{Felt, FieldTables};
pub use geometry::{FormKind, PointFilter, PolarSpace, ProjectivePoint, Sign, Subspace};
pub use graph::{Graph, GraphBuilder, SrgParams};
pub use polar_graphs::BuiltGraph;
pub use switching::SwitchingSetPair;
