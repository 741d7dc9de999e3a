//! Twisted permutation operators and deformed (anti)symmetrized bases.
//!
//! Products of hatted plane waves reorder with the exchange phase fixed by
//! the cross-particle commutators: for any two slots `s != t`,
//!
//! ```text
//! phi_a(x_s) phi_b(x_t) = exp(i p_b theta p_a) phi_b(x_t) phi_a(x_s)
//! ```
//!
//! which is the representation-level face of the braiding. The deformed
//! basis vectors and the Slater expansion below are coefficient vectors over
//! the slot-ordered products `phi_{h_1}(x_1) ... phi_{h_n}(x_n)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::HopfError;
use crate::theta::ThetaMatrix;

use super::modes::ModeBasis;
use super::phases::f_matrix;

/// A permutation of `n` slots given by its image list: `tau.map[i]` is the
/// slot that item `i` is sent to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, HopfError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(HopfError::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }

    /// `self` after `rhs`: `(self o rhs)(i) = self(rhs(i))`.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        Permutation {
            map: rhs.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn sign(&self) -> i32 {
        let mut visited = vec![false; self.map.len()];
        let mut sign = 1;
        for start in 0..self.map.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.map[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// All permutations of `n` items.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        permute(&mut items, 0, &mut out);
        out
    }
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == items.len() {
        out.push(Permutation { map: items.clone() });
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Largest entry modulus of a complex matrix.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn tuple_index(tuple: &[usize], num_modes: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * num_modes + i)
}

fn index_tuple(mut flat: usize, order: usize, num_modes: usize) -> Vec<usize> {
    let mut tuple = vec![0; order];
    for slot in (0..order).rev() {
        tuple[slot] = flat % num_modes;
        flat /= num_modes;
    }
    tuple
}

/// The plain permutation operator on `modes^{(x) n}`:
/// `P_tau (e_{i_1} (x) ... (x) e_{i_n}) = e_{i_{tau^{-1}(1)}} (x) ...`.
pub fn permutation_matrix(tau: &Permutation, num_modes: usize) -> DMatrix<Complex64> {
    let n = tau.degree();
    let dim = num_modes.pow(n as u32);
    let inv = tau.inverse();
    let mut mat = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let tuple = index_tuple(col, n, num_modes);
        let image: Vec<usize> = (0..n).map(|slot| tuple[inv.apply(slot)]).collect();
        mat[(tuple_index(&image, num_modes), col)] = Complex64::new(1.0, 0.0);
    }
    mat
}

/// The twisted permutation operator `F^n P_tau (F^n)^{-1}` as an explicit
/// matrix on `modes^{(x) n}`.
pub fn twisted_permutation(
    tau: &Permutation,
    modes: &ModeBasis,
    theta: &ThetaMatrix,
) -> Result<DMatrix<Complex64>, HopfError> {
    let n = tau.degree();
    if n < 2 {
        // one slot: nothing to twist
        return Ok(DMatrix::identity(modes.len().pow(n as u32), modes.len().pow(n as u32)));
    }
    let f = f_matrix(modes, n, theta)?;
    let m = modes.len();
    let dim = m.pow(n as u32);
    let perm = permutation_matrix(tau, m);
    let mut out = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let col_tuple = index_tuple(col, n, m);
        let col_phase = f.exponent(&col_tuple).to_f64().unwrap();
        for row in 0..dim {
            let v = perm[(row, col)];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            let row_tuple = index_tuple(row, n, m);
            let row_phase = f.exponent(&row_tuple).to_f64().unwrap();
            out[(row, col)] = v * Complex64::from_polar(1.0, row_phase - col_phase);
        }
    }
    Ok(out)
}

/// The twisted (anti)symmetrizer `(1/n!) sum_tau sign(tau) F^n P_tau (F^n)^{-1}`.
pub fn twisted_symmetrizer(
    n: usize,
    modes: &ModeBasis,
    theta: &ThetaMatrix,
    antisymmetric: bool,
) -> Result<DMatrix<Complex64>, HopfError> {
    let m = modes.len();
    let dim = m.pow(n as u32);
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    let taus = Permutation::all(n);
    let count = taus.len() as f64;
    for tau in &taus {
        let sign = if antisymmetric { tau.sign() as f64 } else { 1.0 };
        acc += twisted_permutation(tau, modes, theta)?.scale(sign);
    }
    Ok(acc.scale(1.0 / count))
}

/// Coefficient vector over the slot-ordered two-particle products
/// `phi_h(x_1) phi_k(x_2)`, indexed by `(h, k)`.
pub type PairCoefficients = DMatrix<Complex64>;

/// The deformed (anti)symmetrized pair built two independent ways.
pub struct DeformedPair {
    /// Expansion written through the braiding phase on the swapped term.
    pub braided: PairCoefficients,
    /// Expansion with swapped slot arguments, reordered by the exchange rule.
    pub swapped: PairCoefficients,
    /// Largest modulus of the entrywise difference.
    pub residual: f64,
}

/// Expands the deformed (anti)symmetrized pair `(i, j)`.
///
/// Route one keeps the wavefunction order and multiplies the swapped term by
/// the braiding phase; route two swaps the slot arguments and reorders each
/// product into slot order with the exchange phase. Both are returned so the
/// caller can confirm they agree.
pub fn deformed_pair_basis(
    i: usize,
    j: usize,
    modes: &ModeBasis,
    theta: &ThetaMatrix,
    antisymmetric: bool,
) -> Result<DeformedPair, HopfError> {
    if modes.dim() != theta.dim() {
        return Err(HopfError::ModeDimension {
            expected: theta.dim(),
            got: modes.dim(),
        });
    }
    let m = modes.len();
    let sign = if antisymmetric { -1.0 } else { 1.0 };
    let pi = modes.momentum(i);
    let pj = modes.momentum(j);

    // phi_i(x1) phi_j(x2) + s R(..) phi_j(x1) phi_i(x2), with the braiding
    // phase taken from the tau(F) F^{-1} construction
    let r = super::phases::r_matrix(modes, theta)?;
    let mut braided = DMatrix::zeros(m, m);
    braided[(i, j)] += Complex64::new(1.0, 0.0);
    braided[(j, i)] += r.phase(&[i, j]) * sign;

    // phi_i(x1) phi_j(x2) + s phi_i(x2) phi_j(x1), reordered into slot order
    // by the exchange rule phi_i(x2) phi_j(x1) = exp(i p_j theta p_i) phi_j(x1) phi_i(x2)
    let mut swapped = DMatrix::zeros(m, m);
    swapped[(i, j)] += Complex64::new(1.0, 0.0);
    let exch = theta.bilinear(pj, pi);
    swapped[(j, i)] += Complex64::from_polar(1.0, exch.to_f64().unwrap()) * sign;

    let residual = max_abs(&(&braided - &swapped));
    Ok(DeformedPair {
        braided,
        swapped,
        residual,
    })
}

/// Result of the deformed Slater expansion.
pub struct SlaterExpansion {
    /// Coefficients over slot-ordered products, flat-indexed by mode tuple.
    pub coefficients: Vec<Complex64>,
    /// Set when a repeated index forced the expansion to vanish.
    pub vanished: bool,
}

/// Expands the fermionic `n`-particle determinant over slot-ordered products
/// of hatted wavefunctions, keeping the wavefunction order and permuting the
/// slot arguments; normalization is `1 / sqrt(n!)`.
pub fn slater_expansion(
    indices: &[usize],
    modes: &ModeBasis,
    theta: &ThetaMatrix,
) -> Result<SlaterExpansion, HopfError> {
    if modes.dim() != theta.dim() {
        return Err(HopfError::ModeDimension {
            expected: theta.dim(),
            got: modes.dim(),
        });
    }
    let n = indices.len();
    let m = modes.len();
    let dim = m.pow(n as u32);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); dim];
    // repeated index: antisymmetry forces zero, flagged for the caller
    for a in 0..n {
        for b in (a + 1)..n {
            if indices[a] == indices[b] {
                return Ok(SlaterExpansion {
                    coefficients,
                    vanished: true,
                });
            }
        }
    }
    let norm = 1.0 / (factorial(n) as f64).sqrt();
    for tau in Permutation::all(n) {
        // the term phi_{i_1}(x_{tau(1)}) ... phi_{i_n}(x_{tau(n)}):
        // bubble the factors into ascending slot order, collecting the
        // exchange phase exp(i p_b theta p_a) per adjacent swap
        let mut factors: Vec<(usize, usize)> = (0..n)
            .map(|a| (tau.apply(a), indices[a]))
            .collect();
        let mut exponent = BigRational::zero();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for a in 0..n - 1 {
                if factors[a].0 > factors[a + 1].0 {
                    let (pa, pb) = (factors[a].1, factors[a + 1].1);
                    exponent += theta.bilinear(modes.momentum(pb), modes.momentum(pa));
                    factors.swap(a, a + 1);
                    swapped = true;
                }
            }
        }
        let tuple: Vec<usize> = factors.iter().map(|&(_, idx)| idx).collect();
        let weight = Complex64::from_polar(1.0, exponent.to_f64().unwrap())
            * (tau.sign() as f64)
            * norm;
        coefficients[tuple_index(&tuple, m)] += weight;
    }
    Ok(SlaterExpansion {
        coefficients,
        vanished: false,
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn basis3() -> ModeBasis {
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 2]]).unwrap()
    }

    #[test]
    fn permutation_group_basics() {
        let taus = Permutation::all(3);
        assert_eq!(taus.len(), 6);
        for tau in &taus {
            assert_eq!(tau.compose(&tau.inverse()), Permutation::identity(3));
        }
        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(swap.sign(), -1);
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(cycle.sign(), 1);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn permutation_matrices_represent_the_group() {
        let m = 2;
        for a in Permutation::all(3) {
            for b in Permutation::all(3) {
                let prod = permutation_matrix(&a, m) * permutation_matrix(&b, m);
                let direct = permutation_matrix(&a.compose(&b), m);
                assert!(max_abs(&(prod - direct)) < 1e-14);
            }
        }
    }

    #[test]
    fn twisted_permutations_form_a_group() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 2));
        let modes = basis3();
        let taus = Permutation::all(3);
        for a in &taus {
            for b in &taus {
                let pa = twisted_permutation(a, &modes, &theta).unwrap();
                let pb = twisted_permutation(b, &modes, &theta).unwrap();
                let direct = twisted_permutation(&a.compose(b), &modes, &theta).unwrap();
                assert!(max_abs(&(pa * pb - direct)) < 1e-12);
            }
        }
    }

    #[test]
    fn twisted_transposition_squares_to_identity() {
        let theta = ThetaMatrix::scalar_2d(rat(2, 3));
        let modes = basis3();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let p = twisted_permutation(&swap, &modes, &theta).unwrap();
        let dim = p.nrows();
        assert!(max_abs(&(&p * &p - DMatrix::<Complex64>::identity(dim, dim))) < 1e-12);

        // identity permutation twists to the identity matrix
        let id = twisted_permutation(&Permutation::identity(2), &modes, &theta).unwrap();
        assert!(max_abs(&(id - DMatrix::<Complex64>::identity(dim, dim))) < 1e-14);
    }

    #[test]
    fn zero_theta_reduces_to_plain_permutation() {
        let theta = ThetaMatrix::zero(2);
        let modes = basis3();
        let tau = Permutation::new(vec![2, 0, 1]).unwrap();
        let twisted = twisted_permutation(&tau, &modes, &theta).unwrap();
        assert!(max_abs(&(twisted - permutation_matrix(&tau, modes.len()))) < 1e-14);
    }

    #[test]
    fn twisted_symmetrizers_are_idempotent() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 3));
        let modes = basis3();
        for anti in [false, true] {
            let a = twisted_symmetrizer(3, &modes, &theta, anti).unwrap();
            assert!(max_abs(&(&a * &a - &a)) < 1e-12);
        }
    }

    #[test]
    fn deformed_pair_routes_agree() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 2));
        let modes = basis3();
        for i in 0..3 {
            for j in 0..3 {
                for anti in [false, true] {
                    let pair = deformed_pair_basis(i, j, &modes, &theta, anti).unwrap();
                    assert!(pair.residual < 1e-14, "i={i} j={j} anti={anti}");
                }
            }
        }
    }

    #[test]
    fn bosonic_diagonal_pair_has_weight_two() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 2));
        let modes = basis3();
        let pair = deformed_pair_basis(1, 1, &modes, &theta, false).unwrap();
        assert!((pair.braided[(1, 1)] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_theta_pair_is_plain_symmetrization() {
        let theta = ThetaMatrix::zero(2);
        let modes = basis3();
        let pair = deformed_pair_basis(0, 2, &modes, &theta, true).unwrap();
        assert!((pair.braided[(0, 2)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((pair.braided[(2, 0)] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn slater_matches_pair_and_vanishes_on_repeats() {
        let theta = ThetaMatrix::scalar_2d(rat(1, 2));
        let modes = basis3();

        let single = slater_expansion(&[2], &modes, &theta).unwrap();
        assert!((single.coefficients[2] - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        let repeated = slater_expansion(&[1, 1], &modes, &theta).unwrap();
        assert!(repeated.vanished);
        assert!(repeated.coefficients.iter().all(|c| c.norm() == 0.0));

        // n = 2 equals the antisymmetric deformed pair up to 1/sqrt(2)
        let pair = deformed_pair_basis(0, 1, &modes, &theta, true).unwrap();
        let slater = slater_expansion(&[0, 1], &modes, &theta).unwrap();
        let m = modes.len();
        let norm = (2.0f64).sqrt().recip();
        for h in 0..m {
            for k in 0..m {
                let expect = pair.swapped[(h, k)] * norm;
                let got = slater.coefficients[h * m + k];
                assert!((expect - got).norm() < 1e-13, "h={h} k={k}");
            }
        }
    }
}
