//! Exact integer and rational primitives shared by every other module.

pub mod arith;
pub mod lattice;
pub mod matrix;
pub mod plane;
pub mod snf;

pub use arith::{ceil_div, content, ext_gcd, floor_div, gcd, primitive};
pub use lattice::{
    lattice_coords, minors_gcd, primitive_in_lattice, rank_exact, reduce_basis_rank2, row_lattice_basis,
    same_lattice, solve2, solve2_matrix,
};
pub use matrix::IntMatrix;
pub use plane::{cross2, in_cone, inverse_unimodular, PlanePoint};
pub use snf::{smith_normal_form, SnfResult};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;
