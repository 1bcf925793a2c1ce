//! Integer cohomology rings of moment-angle complexes.
//!
//! For a simplicial complex `K` on `[m]`, the cohomology of the moment-angle
//! complex `Z_K` splits as a direct sum of the reduced cohomology groups of
//! all full subcomplexes `K_J`, and the cup product is induced by the join
//! maps `K_{I ⊔ J} → K_I * K_J`. This crate computes that decomposition
//! exactly over the integers and decides whether the ring is the cohomology
//! of a connected sum of products of spheres.

pub mod classify;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod hochster;
pub mod homology;
pub mod io;
pub mod report;

pub use classify::{classify, classify_complex, Case, ClassificationReport};
pub use complex::{generate_stacked_sphere, LabeledComplex, MissingFace, Simplex, SimplicialComplex, VertexSet};
pub use error::{Error, Result};
pub use hochster::{decompose, decompose_with, BigradedTable, DecomposeOptions};
