//! Exact decision procedure for nonnegative integer rank two.
//!
//! A rank-2 nonnegative integer matrix is turned into a planar picture: its
//! columns become integer points inside a rational cone, and the matrix has
//! a nonnegative integer factorization of inner dimension 2 exactly when two
//! lattice points of the cone generate every column point as a nonnegative
//! integer combination. [`solver::solve`] decides this and returns a checked
//! factorization; [`reduction::reduce_to_3x3`] produces an equivalent 3x3
//! instance.

pub mod diagram;
pub mod error;
pub mod exact;
pub mod instancegen;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use diagram::{build_diagram, canonicalize, CanonicalDiagram, Diagram};
pub use error::{Error, Result};
pub use exact::{Int, IntMatrix, PlanePoint, Rat};
pub use reduction::{build_3xm, reduce_to_3x3, validate_equivalence, EquivalenceReport, ReductionTrace};
pub use solver::{solve, solve_with, verify_factorization, SolveOptions, SolveOutcome, Verdict};


