//! orbitweave: the combinatorial calculus of weak-order graphs of spherical
//! varieties.
//!
//! A weak-order graph is a labeled DAG on Borel-orbit closures: each edge
//! carries a simple-root label and a type in {U, T, N}, N being the double
//! (degree-2) edge. This crate certifies such graphs against the structural
//! axioms, computes oriented-path invariants (the Weyl element of a path,
//! its U/T/N counts, the degrees d(Y, w) = 2^{l_N}), expands orbit-closure
//! classes in the Schubert basis, and derives the Weyl-group action on the
//! vertex set with the stabilizer decomposition of the top vertex.
//!
//! Graphs come from JSON files, from the built-in model builders (SL(2)
//! atoms, flag case, group case, parabolic induction) or from the fixture
//! set transcribing printed examples.

pub mod cartan;
pub mod error;
pub mod graph;
pub mod io;
pub mod knop;
pub mod models;
pub mod paths;
pub mod weyl;

pub use cartan::CartanDatum;
pub use error::Error;
pub use graph::{Certification, EdgeStatus, EdgeType, OrbitGraph, OrbitVertex};
pub use knop::{ActionTable, Lattice, StabilizerReport};
pub use paths::{ExpansionReport, PathSummary};
pub use weyl::{Elem, Weight, WeightBasis, WeylGroupTable};
