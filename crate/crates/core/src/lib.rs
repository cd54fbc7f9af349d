//! Exact-arithmetic computational algebra workbench.
//!
//! Integer lattices in canonical Hermite form are the substrate; on top of
//! them sit group-ring arithmetic over free abelian groups, matrix-presented
//! modules with two finite-generation engines, a finite-difference calculus
//! for quasipolynomial functional equations, symplectic wedge-cube and
//! free-group Johnson homomorphism computations, a subgroup-displacement
//! word search, and the explicit generator-count bound pipeline. All of it
//! is exposed through the `torwb` CLI and a Python extension module.

pub mod bounds;
pub mod cli;
pub mod freegroup;
pub mod ia;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod quasipoly;
pub mod ring;
pub mod schema;
pub mod sdp;
pub mod symplectic;

pub use int::Int;
pub use lattice::Lattice;
pub use matrix::{IntMatrix, IntVector};
