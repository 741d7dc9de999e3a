//! Truncated Fock-space realization of the twisted ladder-operator algebra.

pub mod algebra;
pub mod basis;
pub mod field;
pub mod matrix;

pub use algebra::{
    dressed_sector_rank, expected_sector_dim, twisted_ccr_residual, CcrAlgebra, CcrCheck,
    DressedOps,
};
pub use basis::{binomial, FockBasis, Statistics};
pub use field::{discrete_delta, star_bracket, FieldElement};
pub use matrix::SparseMatrix;
