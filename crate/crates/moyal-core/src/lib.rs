//! Deformation-quantization toolkit: exact Moyal star products and Weyl maps
//! on polynomials, twist machinery in symbolic and plane-wave form, twisted
//! CCR algebras on truncated Fock spaces, a spectral numeric star product on
//! sampled functions, and deformed Landau / many-particle dynamics.
//!
//! The symbolic layer works over exact Gaussian rationals, so every algebraic
//! identity it claims is checked by structural equality. The numeric layers
//! (plane-wave phases, Fock matrices, grids, spectra) use `f64` and report
//! residuals against stated tolerances.

pub mod error;
pub mod multi_index;
pub mod scalar;
pub mod theta;
pub mod poly;
pub mod star;
pub mod weyl;
pub mod op;
pub mod hopf;
pub mod fock;
pub mod grid;
pub mod dynamics;

pub use error::{CoreError, DynamicsError, FockError, GridError, HopfError};
pub use multi_index::MultiIndex;
pub use op::{DiffOperator, StarOperator};
pub use poly::PolyExpr;
pub use scalar::Scalar;
pub use star::{moyal_star, star_commutator};
pub use theta::ThetaMatrix;
pub use weyl::{inverse_weyl, weyl_normal_form, StarPolyCoeffs};
