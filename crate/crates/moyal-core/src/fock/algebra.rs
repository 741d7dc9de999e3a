//! Creation/annihilation matrices, the Jordan-Schwinger map, the dressing
//! transformation and the twisted exchange relations on truncations.
//!
//! The dressing multiplies each ladder operator by a diagonal phase built
//! from the total momentum it acts on:
//!
//! ```text
//! dressed a+_p = a+_p exp(-(i/2) p theta K)    (K = momentum of the state)
//! dressed a_p  = a_p  exp(+(i/2) p theta K)
//! ```
//!
//! Momenta are rational, so the phase exponents are exact and the only
//! floating step is the final complex exponential. Relations are asserted on
//! columns with total number `N <= Nmax - 1`: one creation starting from the
//! top sector leaves the truncation and is flagged instead of checked.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::FockError;
use crate::hopf::modes::ModeBasis;
use crate::theta::ThetaMatrix;

use super::basis::{binomial, FockBasis, Statistics};
use super::matrix::SparseMatrix;

/// The undeformed ladder operators over a mode basis.
pub struct CcrAlgebra {
    pub basis: FockBasis,
    pub modes: ModeBasis,
    pub annihilate: Vec<SparseMatrix>,
    pub create: Vec<SparseMatrix>,
}

/// Residuals of the canonical (anti)commutation relations on the truncation.
pub struct CcrCheck {
    /// Largest residual over columns that stay inside the truncation.
    pub interior_residual: f64,
    /// True when the `a a+` relation is broken on the top sector, which is
    /// expected for any finite truncation.
    pub top_sector_truncated: bool,
}

impl CcrAlgebra {
    pub fn build(modes: &ModeBasis, statistics: Statistics, nmax: usize) -> Result<Self, FockError> {
        if modes.is_empty() {
            return Err(FockError::EmptyModeSet);
        }
        let basis = FockBasis::new(statistics, modes.len(), nmax)?;
        let dim = basis.dim();
        let mut annihilate = Vec::with_capacity(modes.len());
        let mut create = Vec::with_capacity(modes.len());
        for p in 0..modes.len() {
            let mut a = SparseMatrix::zero(dim);
            let mut adag = SparseMatrix::zero(dim);
            for col in 0..dim {
                let state = basis.state(col).to_vec();
                let occ = state[p];
                match statistics {
                    Statistics::Bose => {
                        if occ > 0 {
                            let mut lower = state.clone();
                            lower[p] -= 1;
                            let row = basis.index_of(&lower).expect("lowered state in basis");
                            a.add_entry(row, col, Complex64::new((occ as f64).sqrt(), 0.0));
                        }
                        if basis.total_number(col) < nmax as u32 {
                            let mut raised = state.clone();
                            raised[p] += 1;
                            let row = basis.index_of(&raised).expect("raised state in basis");
                            adag.add_entry(row, col, Complex64::new(((occ + 1) as f64).sqrt(), 0.0));
                        }
                    }
                    Statistics::Fermi => {
                        let sign = if state[..p].iter().sum::<u32>() % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        };
                        if occ == 1 {
                            let mut lower = state.clone();
                            lower[p] = 0;
                            let row = basis.index_of(&lower).expect("lowered state in basis");
                            a.add_entry(row, col, Complex64::new(sign, 0.0));
                        } else if basis.total_number(col) < nmax as u32 {
                            let mut raised = state.clone();
                            raised[p] = 1;
                            if let Some(row) = basis.index_of(&raised) {
                                adag.add_entry(row, col, Complex64::new(sign, 0.0));
                            }
                        }
                    }
                }
            }
            annihilate.push(a);
            create.push(adag);
        }
        Ok(CcrAlgebra {
            basis,
            modes: modes.clone(),
            annihilate,
            create,
        })
    }

    fn exchange_sign(&self) -> f64 {
        match self.basis.statistics() {
            Statistics::Bose => 1.0,
            Statistics::Fermi => -1.0,
        }
    }

    /// Checks the canonical relations; the `a a+` family is only exact below
    /// the truncation edge.
    pub fn verify_ccr(&self) -> CcrCheck {
        let m = self.modes.len();
        let s = self.exchange_sign();
        let nmax = self.basis.nmax() as u32;
        let interior = |col: usize| self.basis.total_number(col) < nmax;
        let mut worst: f64 = 0.0;
        let mut top_broken = false;
        for i in 0..m {
            for j in 0..m {
                // a^i a^j = s a^j a^i, exact everywhere
                let aa = self.annihilate[i]
                    .mul(&self.annihilate[j])
                    .sub(&self.annihilate[j].mul(&self.annihilate[i]).scale(s.into()));
                worst = worst.max(aa.max_abs());
                let cc = self.create[i]
                    .mul(&self.create[j])
                    .sub(&self.create[j].mul(&self.create[i]).scale(s.into()));
                worst = worst.max(cc.max_abs());
                // a^i a+_j - s a+_j a^i = delta_ij
                let mut mixed = self.annihilate[i]
                    .mul(&self.create[j])
                    .sub(&self.create[j].mul(&self.annihilate[i]).scale(s.into()));
                if i == j {
                    mixed = mixed.sub(&SparseMatrix::identity(self.basis.dim()));
                }
                worst = worst.max(mixed.max_abs_on_columns(interior));
                if mixed.max_abs() > 1e-12 {
                    top_broken = true;
                }
            }
        }
        CcrCheck {
            interior_residual: worst,
            top_sector_truncated: top_broken,
        }
    }

    /// Total momentum carried by a basis state, exactly.
    pub fn state_momentum(&self, state_index: usize) -> Vec<BigRational> {
        let state = self.basis.state(state_index);
        let mut k = vec![BigRational::zero(); self.modes.dim()];
        for (mode, &occ) in state.iter().enumerate() {
            if occ > 0 {
                for (axis, component) in self.modes.momentum(mode).iter().enumerate() {
                    k[axis] += component * BigRational::from_integer(occ.into());
                }
            }
        }
        k
    }

    /// The Jordan-Schwinger image `sigma(g) = rho_i^j a+_j a^i` of a
    /// one-particle operator given by its matrix on the mode span.
    pub fn jordan_schwinger(&self, rho: &DMatrix<Complex64>) -> Result<SparseMatrix, FockError> {
        let m = self.modes.len();
        if rho.nrows() != m || rho.ncols() != m {
            return Err(FockError::GeneratorShape {
                expected: m,
                got: rho.nrows() * rho.ncols(),
            });
        }
        let mut out = SparseMatrix::zero(self.basis.dim());
        for row in 0..m {
            for col in 0..m {
                let coeff = rho[(row, col)];
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                out = out.add(&self.create[row].mul(&self.annihilate[col]).scale(coeff));
            }
        }
        Ok(out)
    }

    /// `sigma(P_a)`: diagonal with the total momentum component of each state.
    pub fn sigma_p(&self, axis: usize) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.basis.dim());
        for s in 0..self.basis.dim() {
            let k = self.state_momentum(s);
            let v = k[axis].to_f64().unwrap();
            if v != 0.0 {
                out.add_entry(s, s, Complex64::new(v, 0.0));
            }
        }
        out
    }

    /// Dressed ladder operators for the deformation `theta`.
    pub fn dress(&self, theta: &ThetaMatrix) -> Result<DressedOps, FockError> {
        if theta.dim() != self.modes.dim() {
            return Err(FockError::GeneratorShape {
                expected: self.modes.dim(),
                got: theta.dim(),
            });
        }
        let dim = self.basis.dim();
        let half = BigRational::new(1.into(), 2.into());
        let mut annihilate = Vec::with_capacity(self.modes.len());
        let mut create = Vec::with_capacity(self.modes.len());
        for p in 0..self.modes.len() {
            let momentum = self.modes.momentum(p).to_vec();
            // diagonal phases exp(-/+ (i/2) p theta K(state))
            let mut phase_create = SparseMatrix::zero(dim);
            let mut phase_annihilate = SparseMatrix::zero(dim);
            for s in 0..dim {
                let k = self.state_momentum(s);
                let e = &half * theta.bilinear(&momentum, &k);
                let angle = e.to_f64().unwrap();
                phase_create.add_entry(s, s, Complex64::from_polar(1.0, -angle));
                phase_annihilate.add_entry(s, s, Complex64::from_polar(1.0, angle));
            }
            create.push(self.create[p].mul(&phase_create));
            annihilate.push(self.annihilate[p].mul(&phase_annihilate));
        }
        Ok(DressedOps {
            annihilate,
            create,
        })
    }
}

/// Ladder operators after the dressing transformation.
pub struct DressedOps {
    pub annihilate: Vec<SparseMatrix>,
    pub create: Vec<SparseMatrix>,
}

/// Largest residual of the three twisted exchange-relation families for the
/// dressed operators, asserted on columns with `N <= Nmax - 1`.
pub fn twisted_ccr_residual(
    algebra: &CcrAlgebra,
    dressed: &DressedOps,
    theta: &ThetaMatrix,
) -> Result<f64, FockError> {
    let m = algebra.modes.len();
    if dressed.annihilate.len() != m || dressed.create.len() != m {
        return Err(FockError::BasisMismatch);
    }
    let s = algebra.exchange_sign();
    let nmax = algebra.basis.nmax() as u32;
    let interior = |col: usize| algebra.basis.total_number(col) < nmax;
    let dim = algebra.basis.dim();
    let mut worst: f64 = 0.0;
    for i in 0..m {
        let pi = algebra.modes.momentum(i);
        for j in 0..m {
            let pj = algebra.modes.momentum(j);
            // phase exp(i p_j theta p_i) for both homogeneous families
            let homo = Complex64::from_polar(1.0, theta.bilinear(pj, pi).to_f64().unwrap());
            // a'^i a'^j = s R ... a'^j a'^i
            let f1 = dressed.annihilate[i].mul(&dressed.annihilate[j]).sub(
                &dressed.annihilate[j]
                    .mul(&dressed.annihilate[i])
                    .scale(homo * s),
            );
            worst = worst.max(f1.max_abs_on_columns(interior));
            // a+_i a+_j = s R ... a+_j a+_i
            let f2 = dressed.create[i]
                .mul(&dressed.create[j])
                .sub(&dressed.create[j].mul(&dressed.create[i]).scale(homo * s));
            worst = worst.max(f2.max_abs_on_columns(interior));
            // a'^i a+_j = delta_ij + s exp(i p_i theta p_j) a+_j a'^i
            let mixed_phase =
                Complex64::from_polar(1.0, theta.bilinear(pi, pj).to_f64().unwrap());
            let mut f3 = dressed.annihilate[i].mul(&dressed.create[j]).sub(
                &dressed.create[j]
                    .mul(&dressed.annihilate[i])
                    .scale(mixed_phase * s),
            );
            if i == j {
                f3 = f3.sub(&SparseMatrix::identity(dim));
            }
            worst = worst.max(f3.max_abs_on_columns(interior));
        }
    }
    Ok(worst)
}

/// Dimension of the `n`-particle sector spanned by dressed creation
/// operators, computed as the numerical rank of the spanned vectors.
pub fn dressed_sector_rank(
    algebra: &CcrAlgebra,
    dressed: &DressedOps,
    n: usize,
) -> Result<usize, FockError> {
    if n > algebra.basis.nmax() {
        return Err(FockError::SectorOutOfRange {
            n,
            nmax: algebra.basis.nmax(),
        });
    }
    if n == 0 {
        return Ok(1);
    }
    let dim = algebra.basis.dim();
    let vacuum = algebra.basis.vacuum();
    let m = algebra.modes.len();
    // all n-fold products of dressed creators applied to the vacuum;
    // non-decreasing index tuples enumerate the mode multisets
    let mut vectors: Vec<Vec<Complex64>> = Vec::new();
    let mut tuple = vec![0usize; n];
    loop {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[vacuum] = Complex64::new(1.0, 0.0);
        for &p in &tuple {
            v = dressed.create[p].apply(&v);
        }
        if v.iter().any(|c| c.norm_sqr() > 0.0) {
            vectors.push(v);
        }
        let mut pos = n;
        while pos > 0 && tuple[pos - 1] == m - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        let next = tuple[pos - 1] + 1;
        for slot in (pos - 1)..n {
            tuple[slot] = next;
        }
    }
    if vectors.is_empty() {
        return Ok(0);
    }
    let mat = DMatrix::from_fn(dim, vectors.len(), |r, c| vectors[c][r]);
    let svd = mat.svd(false, false);
    let tol = 1e-9 * svd.singular_values.max();
    Ok(svd.singular_values.iter().filter(|&&sv| sv > tol).count())
}

/// The undeformed `n`-particle state count for `m` modes.
pub fn expected_sector_dim(statistics: Statistics, m: usize, n: usize) -> usize {
    match statistics {
        Statistics::Bose => binomial(m + n - 1, n),
        Statistics::Fermi => binomial(m, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn modes2() -> ModeBasis {
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap()
    }

    fn modes3() -> ModeBasis {
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn bose_ccr_on_interior() {
        let alg = CcrAlgebra::build(&modes2(), Statistics::Bose, 2).unwrap();
        let check = alg.verify_ccr();
        assert!(check.interior_residual < 1e-14);
        assert!(check.top_sector_truncated);
    }

    #[test]
    fn fermi_ccr_is_exact() {
        let alg = CcrAlgebra::build(&modes3(), Statistics::Fermi, 3).unwrap();
        let check = alg.verify_ccr();
        assert!(check.interior_residual < 1e-14);
        // (a+)^2 = 0
        for p in 0..3 {
            assert_eq!(alg.create[p].mul(&alg.create[p]).nnz(), 0);
        }
    }

    #[test]
    fn jordan_schwinger_momentum_eigenvalues() {
        let alg = CcrAlgebra::build(&modes2(), Statistics::Bose, 2).unwrap();
        let sigma = alg.sigma_p(0);
        // vacuum is annihilated
        let vac = alg.basis.vacuum();
        assert_eq!(sigma.get(vac, vac).norm(), 0.0);
        // a+_p vacuum is an eigenvector with eigenvalue p_a
        let mut v = vec![Complex64::new(0.0, 0.0); alg.basis.dim()];
        v[vac] = Complex64::new(1.0, 0.0);
        let one_particle = alg.create[0].apply(&v);
        let sv = sigma.apply(&one_particle);
        for (a, b) in sv.iter().zip(&one_particle) {
            assert!((a - b).norm() < 1e-14); // p = (1, 0), sigma(P_1) eigenvalue 1
        }
    }

    #[test]
    fn jordan_schwinger_is_a_homomorphism() {
        let alg = CcrAlgebra::build(&modes3(), Statistics::Fermi, 3).unwrap();
        let m = 3;
        let a = DMatrix::from_fn(m, m, |r, c| Complex64::new((r + 2 * c) as f64, 1.0 - r as f64));
        let b = DMatrix::from_fn(m, m, |r, c| Complex64::new(0.5 * c as f64, (r * c) as f64));
        let sa = alg.jordan_schwinger(&a).unwrap();
        let sb = alg.jordan_schwinger(&b).unwrap();
        let commutator_matrix = &a * &b - &b * &a;
        let lhs = alg.jordan_schwinger(&commutator_matrix).unwrap();
        let rhs = sa.mul(&sb).sub(&sb.mul(&sa));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);

        // sigma(P_1) and sigma(P_2) commute (diagonal generators)
        let s1 = alg.sigma_p(0);
        let s2 = alg.sigma_p(1);
        assert!(s1.mul(&s2).sub(&s2.mul(&s1)).max_abs() < 1e-14);
    }

    #[test]
    fn dressing_reduces_to_identity_when_trivial() {
        let alg = CcrAlgebra::build(&modes2(), Statistics::Bose, 3).unwrap();
        // theta = 0
        let dressed = alg.dress(&ThetaMatrix::zero(2)).unwrap();
        for p in 0..2 {
            assert!(dressed.create[p].sub(&alg.create[p]).max_abs() < 1e-15);
            assert!(dressed.annihilate[p].sub(&alg.annihilate[p]).max_abs() < 1e-15);
        }
        // single mode: p theta p = 0
        let single = ModeBasis::from_ints(2, &[&[2, 3]]).unwrap();
        let alg1 = CcrAlgebra::build(&single, Statistics::Bose, 3).unwrap();
        let dressed1 = alg1.dress(&ThetaMatrix::scalar_2d(rat(1, 2))).unwrap();
        assert!(dressed1.create[0].sub(&alg1.create[0]).max_abs() < 1e-15);
    }

    #[test]
    fn dressed_operators_are_mutually_adjoint() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 3));
        for stats in [Statistics::Bose, Statistics::Fermi] {
            let alg = CcrAlgebra::build(&modes3(), stats, 3).unwrap();
            let dressed = alg.dress(&theta).unwrap();
            for p in 0..3 {
                let diff = dressed.create[p].adjoint().sub(&dressed.annihilate[p]);
                assert!(diff.max_abs() < 1e-14);
            }
        }
    }

    #[test]
    fn twisted_relations_hold_on_interior() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 2));
        for stats in [Statistics::Bose, Statistics::Fermi] {
            let alg = CcrAlgebra::build(&modes3(), stats, 3).unwrap();
            let dressed = alg.dress(&theta).unwrap();
            let res = twisted_ccr_residual(&alg, &dressed, &theta).unwrap();
            assert!(res < 1e-12, "stats {:?}: residual {res}", stats);
        }
    }

    #[test]
    fn dressed_vacuum_is_annihilated() {
        let theta = ThetaMatrix::scalar_2d(rat(2, 3));
        let alg = CcrAlgebra::build(&modes3(), Statistics::Bose, 3).unwrap();
        let dressed = alg.dress(&theta).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); alg.basis.dim()];
        v[alg.basis.vacuum()] = Complex64::new(1.0, 0.0);
        for p in 0..3 {
            let out = dressed.annihilate[p].apply(&v);
            assert!(out.iter().all(|c| c.norm() < 1e-15));
        }
    }

    #[test]
    fn sector_dimensions_are_theta_independent() {
        for stats in [Statistics::Bose, Statistics::Fermi] {
            let alg = CcrAlgebra::build(&modes3(), stats, 3).unwrap();
            for theta_val in [rat(0, 1), rat(1, 2), rat(3, 1)] {
                let dressed = alg.dress(&ThetaMatrix::scalar_2d(theta_val.clone())).unwrap();
                for n in 0..=3usize {
                    let rank = dressed_sector_rank(&alg, &dressed, n).unwrap();
                    assert_eq!(
                        rank,
                        expected_sector_dim(stats, 3, n),
                        "stats {:?}, theta {}, n {}",
                        stats,
                        theta_val,
                        n
                    );
                }
            }
        }
    }
}
