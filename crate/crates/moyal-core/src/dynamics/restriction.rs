//! Restriction of the free Fock Hamiltonian to fixed particle sectors.
//!
//! For a translation-invariant one-particle energy the star product is
//! ineffective, so the second-quantized Hamiltonian restricted to the
//! `n`-particle sector must coincide with the direct `n`-particle operator
//! transported to the occupation basis. Both sides are built independently:
//! the Fock side from ladder matrices (dressed or not — the dressing phases
//! cancel on the invariant combination), the direct side on the full tensor
//! power, projected by the (anti)symmetrizer.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::DynamicsError;
use crate::fock::{CcrAlgebra, SparseMatrix, Statistics};
use crate::hopf::modes::ModeBasis;
use crate::hopf::perm::{permutation_matrix, Permutation};
use crate::theta::ThetaMatrix;

/// One-particle kinetic energies `|p|^2` for each mode.
fn mode_energies(modes: &ModeBasis) -> Vec<f64> {
    modes
        .momenta()
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| {
                    let v = c.to_f64().unwrap();
                    v * v
                })
                .sum()
        })
        .collect()
}

/// The second-quantized free Hamiltonian `sum_p |p|^2 a+_p a_p`, built from
/// dressed ladder operators.
pub fn free_fock_hamiltonian(
    algebra: &CcrAlgebra,
    theta: &ThetaMatrix,
) -> Result<SparseMatrix, DynamicsError> {
    let dressed = algebra.dress(theta)?;
    let energies = mode_energies(&algebra.modes);
    let mut h = SparseMatrix::zero(algebra.basis.dim());
    for (p, &e) in energies.iter().enumerate() {
        h = h.add(
            &dressed.create[p]
                .mul(&dressed.annihilate[p])
                .scale(Complex64::new(e, 0.0)),
        );
    }
    Ok(h)
}

/// Largest deviation between the sector-restricted Fock Hamiltonian and the
/// direct `n`-particle operator on the (anti)symmetrized tensor power.
pub fn fock_restriction_residual(
    modes: &ModeBasis,
    statistics: Statistics,
    nmax: usize,
    n: usize,
    theta: &ThetaMatrix,
) -> Result<f64, DynamicsError> {
    let algebra = CcrAlgebra::build(modes, statistics, nmax)?;
    if n > nmax {
        return Err(DynamicsError::Fock(crate::error::FockError::SectorOutOfRange {
            n,
            nmax,
        }));
    }
    let h_fock = free_fock_hamiltonian(&algebra, theta)?;
    let sector = algebra.basis.sector(n);
    let fock_block = DMatrix::from_fn(sector.len(), sector.len(), |r, c| {
        h_fock.get(sector[r], sector[c])
    });

    if n == 0 {
        return Ok(fock_block.iter().map(|c| c.norm()).fold(0.0, f64::max));
    }

    // direct n-particle operator on the full tensor power
    let m = modes.len();
    let dim = m.pow(n as u32);
    let energies = mode_energies(modes);
    let mut direct = DMatrix::<Complex64>::zeros(dim, dim);
    for flat in 0..dim {
        let tuple = unflatten(flat, n, m);
        let total: f64 = tuple.iter().map(|&p| energies[p]).sum();
        direct[(flat, flat)] = Complex64::new(total, 0.0);
    }
    // (anti)symmetrizer
    let sign = match statistics {
        Statistics::Bose => 1.0,
        Statistics::Fermi => -1.0,
    };
    let mut symmetrizer = DMatrix::<Complex64>::zeros(dim, dim);
    let taus = Permutation::all(n);
    let count = taus.len() as f64;
    for tau in &taus {
        let weight = if sign < 0.0 { tau.sign() as f64 } else { 1.0 };
        symmetrizer += permutation_matrix(tau, m).scale(weight);
    }
    symmetrizer /= Complex64::new(count, 0.0);

    // embedding of the occupation basis into the tensor power
    let mut embedding = DMatrix::<Complex64>::zeros(dim, sector.len());
    for (col, &state_idx) in sector.iter().enumerate() {
        let occupations = algebra.basis.state(state_idx);
        let mut rep: Vec<usize> = Vec::with_capacity(n);
        for (mode, &occ) in occupations.iter().enumerate() {
            for _ in 0..occ {
                rep.push(mode);
            }
        }
        let mut v = DMatrix::<Complex64>::zeros(dim, 1);
        v[(flatten(&rep, m), 0)] = Complex64::new(1.0, 0.0);
        let sym = &symmetrizer * v;
        let norm: f64 = sym.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..dim {
            embedding[(r, col)] = sym[(r, 0)] / norm;
        }
    }
    let restricted = embedding.adjoint() * &direct * &embedding;
    let diff = &restricted - &fock_block;
    Ok(diff.iter().map(|c| c.norm()).fold(0.0, f64::max))
}

fn unflatten(mut flat: usize, n: usize, m: usize) -> Vec<usize> {
    let mut tuple = vec![0usize; n];
    for slot in (0..n).rev() {
        tuple[slot] = flat % m;
        flat /= m;
    }
    tuple
}

fn flatten(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * m + i)
}
