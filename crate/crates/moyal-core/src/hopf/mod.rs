//! Twist machinery: the PBW-symbolic enveloping algebra with its deformed
//! coproduct, and the plane-wave representation where the twist, braiding,
//! cocycle condition and twisted permutations become explicit phase tensors.

pub mod modes;
pub mod perm;
pub mod phases;
pub mod tensor;
pub mod uea;

pub use modes::ModeBasis;
pub use perm::{
    deformed_pair_basis, permutation_matrix, slater_expansion, twisted_permutation,
    twisted_symmetrizer, DeformedPair, Permutation, SlaterExpansion,
};
pub use phases::{
    beta_residual, braiding_exponent, cocycle_residual, counit_residual, f_matrix, r_matrix,
    twist_exponent, PhaseTensor,
};
pub use tensor::{coproduct_iter, twisted_coproduct, twisted_coproduct_slot, TensorUEA, TwistedCoproduct};
pub use uea::{Generator, UEAElement, Word};
