//! Deformed Hamiltonians: the Landau problem, its spectrum, many-particle
//! assembly with the additivity-breaking correction, and the Fock-sector
//! restriction check.

pub mod landau;
pub mod many;
pub mod restriction;

pub use landau::{
    build_landau_star, landau_closed_form, landau_connection, landau_hamiltonian,
    landau_spectrum, matched_converged_pairs, HamiltonianReport, LandauParams, LandauSpectrum,
    SectorSpectrum, SpectrumLevel,
};
pub use many::{
    n_particle_hamiltonian, two_particle_hamiltonian, two_particle_laplacian_term,
    two_particle_mixed_term, TwoParticleReport,
};
pub use restriction::{fock_restriction_residual, free_fock_hamiltonian};
