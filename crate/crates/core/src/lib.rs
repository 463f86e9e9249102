//! Homology of Vietoris-Rips complexes of hypercube graphs.
//!
//! `Q_n` is the vertex set `{0,1}^n` under the Hamming metric. The Vietoris-Rips
//! complex `VR(Q_n; r)` has a simplex for every finite subset of diameter at most
//! `r`. This crate computes exact Betti numbers of these complexes over prime
//! fields, constructs explicit cross-polytopal homology generators, evaluates
//! closed-form lower bounds on Betti numbers with exact arithmetic, and runs
//! exact-rational geometric checks on the affine vertex-identification map.
//!
//! Modules:
//!
//! * [`hypercube`] - the metric space `Q_n`: distances, antipodes, subcube
//!   embeddings and projections, cubic hulls, concentration maps, and an
//!   exhaustive contraction verifier.
//! * [`rips`] - clique enumeration of `VR(Q_n; r)` skeletons, simplex
//!   maximality, cross-polytope recognition.
//! * [`homology`] - Betti numbers via sparse boundary reduction, ranks of maps
//!   induced by subcomplex and scale inclusions, cochain/cycle pairing.
//! * [`generators`] - antipode-free families, even/odd maximal simplices,
//!   cross-polytopal cycles and their dual cocycles, independence checks.
//! * [`bounds`] - closed-form lower bounds and identities in exact big-integer
//!   arithmetic, seeded rank propagation, bound tables.
//! * [`geometric`] - exact-rational convex-hull membership, center-coverage
//!   search, and triangulation verification.

pub mod bounds;
pub mod error;
pub mod generators;
pub mod geometric;
pub mod homology;
pub mod hypercube;
pub mod reduce;
pub mod rips;

pub use error::{Error, Result};
