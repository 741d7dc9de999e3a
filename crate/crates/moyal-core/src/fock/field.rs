//! Operator-valued plane-wave sums and their star products.
//!
//! A field element is a sum of terms `(plane-wave legs) x (Fock matrix)`
//! where each leg `exp(i p . x_s)` carries a rational momentum on one
//! argument slot and the matrix carries a definite momentum under the
//! translation action (`P_a` acts on `a+_p` with weight `p_a`). The star
//! product of two such terms multiplies the matrices, merges the legs
//! pointwise, and inserts the phase
//!
//! ```text
//! exp(-(i/2) h theta k)
//! ```
//!
//! built from the *total* momenta `h`, `k` (function legs plus operator leg)
//! of the two factors. A term with total momentum zero is translation
//! invariant and star multiplication by it degenerates to the pointwise
//! product; the full field `phi(x) = sum_p phi_p(x) a^p` is of this kind,
//! which is how the undeformed-looking commutation relations survive the
//! deformation.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::FockError;
use crate::hopf::modes::{add_momenta, neg_momentum, ModeBasis};
use crate::theta::ThetaMatrix;

use super::algebra::CcrAlgebra;
use super::matrix::SparseMatrix;

/// Plane-wave legs (slot -> momentum, zero legs dropped) plus the operator
/// momentum; the full key a term is merged under.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct TermKey {
    legs: Vec<(usize, Vec<BigRational>)>,
    op_momentum: Vec<BigRational>,
}

impl TermKey {
    fn total_momentum(&self, dim: usize) -> Vec<BigRational> {
        let mut total = self.op_momentum.clone();
        debug_assert_eq!(total.len(), dim);
        for (_, p) in &self.legs {
            total = add_momenta(&total, p);
        }
        total
    }

    fn merge_legs(&self, rhs: &TermKey) -> Vec<(usize, Vec<BigRational>)> {
        let mut map: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
        for (slot, p) in self.legs.iter().chain(&rhs.legs) {
            match map.get_mut(slot) {
                Some(existing) => *existing = add_momenta(existing, p),
                None => {
                    map.insert(*slot, p.clone());
                }
            }
        }
        map.into_iter()
            .filter(|(_, p)| !p.iter().all(|c| c.is_zero()))
            .collect()
    }
}

/// A finite sum of (plane-wave legs) x (Fock matrix) terms.
#[derive(Clone, Debug)]
pub struct FieldElement {
    space_dim: usize,
    fock_dim: usize,
    terms: BTreeMap<TermKey, SparseMatrix>,
}

impl FieldElement {
    pub fn zero(space_dim: usize, fock_dim: usize) -> Self {
        FieldElement {
            space_dim,
            fock_dim,
            terms: BTreeMap::new(),
        }
    }

    /// A bare Fock operator with the given translation weight and no legs.
    pub fn from_operator(
        space_dim: usize,
        op: SparseMatrix,
        op_momentum: Vec<BigRational>,
    ) -> Self {
        let fock_dim = op.dim();
        let mut f = FieldElement::zero(space_dim, fock_dim);
        f.add_term(Vec::new(), op_momentum, op);
        f
    }

    /// A pure plane wave `exp(i p . x_slot)` times the identity matrix.
    pub fn plane_wave(space_dim: usize, fock_dim: usize, slot: usize, p: Vec<BigRational>) -> Self {
        let mut f = FieldElement::zero(space_dim, fock_dim);
        f.add_term(
            vec![(slot, p)],
            vec![BigRational::zero(); space_dim],
            SparseMatrix::identity(fock_dim),
        );
        f
    }

    /// The annihilation field `phi(x_slot) = sum_p exp(i p . x_slot) a^p`.
    pub fn annihilation_field(algebra: &CcrAlgebra, slot: usize) -> Self {
        let dim = algebra.modes.dim();
        let mut f = FieldElement::zero(dim, algebra.basis.dim());
        for (idx, p) in algebra.modes.momenta().iter().enumerate() {
            f.add_term(
                vec![(slot, p.clone())],
                neg_momentum(p),
                algebra.annihilate[idx].clone(),
            );
        }
        f
    }

    /// The conjugate field `phi*(x_slot) = sum_p exp(-i p . x_slot) a+_p`.
    pub fn creation_field(algebra: &CcrAlgebra, slot: usize) -> Self {
        let dim = algebra.modes.dim();
        let mut f = FieldElement::zero(dim, algebra.basis.dim());
        for (idx, p) in algebra.modes.momenta().iter().enumerate() {
            f.add_term(
                vec![(slot, neg_momentum(p))],
                p.clone(),
                algebra.create[idx].clone(),
            );
        }
        f
    }

    pub fn add_term(
        &mut self,
        legs: Vec<(usize, Vec<BigRational>)>,
        op_momentum: Vec<BigRational>,
        op: SparseMatrix,
    ) {
        assert_eq!(op.dim(), self.fock_dim);
        assert_eq!(op_momentum.len(), self.space_dim);
        if op.nnz() == 0 {
            return;
        }
        let mut legs: Vec<(usize, Vec<BigRational>)> = legs
            .into_iter()
            .filter(|(_, p)| !p.iter().all(|c| c.is_zero()))
            .collect();
        legs.sort();
        let key = TermKey { legs, op_momentum };
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(op);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&op);
                if sum.nnz() == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        for (k, m) in &rhs.terms {
            out.add_term(k.legs.clone(), k.op_momentum.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> FieldElement {
        let mut out = FieldElement::zero(self.space_dim, self.fock_dim);
        for (k, m) in &self.terms {
            out.add_term(k.legs.clone(), k.op_momentum.clone(), m.scale(s));
        }
        out
    }

    /// Star product: matrix product, merged legs, and the twist phase from
    /// the total momenta of the two factors.
    pub fn star(&self, rhs: &FieldElement, theta: &ThetaMatrix) -> Result<FieldElement, FockError> {
        self.product(rhs, Some(theta))
    }

    /// Pointwise (undeformed) product, for comparisons.
    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.product(rhs, None).expect("no theta to mismatch")
    }

    fn product(
        &self,
        rhs: &FieldElement,
        theta: Option<&ThetaMatrix>,
    ) -> Result<FieldElement, FockError> {
        assert_eq!(self.space_dim, rhs.space_dim);
        if self.fock_dim != rhs.fock_dim {
            return Err(FockError::BasisMismatch);
        }
        if let Some(t) = theta {
            if t.dim() != self.space_dim {
                return Err(FockError::GeneratorShape {
                    expected: self.space_dim,
                    got: t.dim(),
                });
            }
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut out = FieldElement::zero(self.space_dim, self.fock_dim);
        for (ka, ma) in &self.terms {
            let ha = ka.total_momentum(self.space_dim);
            for (kb, mb) in &rhs.terms {
                let mut matrix = ma.mul(mb);
                if matrix.nnz() == 0 {
                    continue;
                }
                if let Some(t) = theta {
                    let kb_total = kb.total_momentum(self.space_dim);
                    let exponent = -(&half * t.bilinear(&ha, &kb_total));
                    if !exponent.is_zero() {
                        matrix =
                            matrix.scale(Complex64::from_polar(1.0, exponent.to_f64().unwrap()));
                    }
                }
                out.add_term(
                    ka.merge_legs(kb),
                    add_momenta(&ka.op_momentum, &kb.op_momentum),
                    matrix,
                );
            }
        }
        Ok(out)
    }

    /// Largest matrix entry over all terms; zero for the zero element.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|m| m.max_abs()).fold(0.0, f64::max)
    }

    /// As `max_abs` but restricted to matrix columns passing the filter.
    pub fn max_abs_on_columns(&self, keep: impl Fn(usize) -> bool + Copy) -> f64 {
        self.terms
            .values()
            .map(|m| m.max_abs_on_columns(keep))
            .fold(0.0, f64::max)
    }

    /// Evaluates the plane-wave legs at the given slot points and sums the
    /// weighted matrices.
    pub fn evaluate(&self, points: &BTreeMap<usize, Vec<f64>>) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.fock_dim);
        for (k, m) in &self.terms {
            let mut angle = 0.0;
            for (slot, p) in &k.legs {
                let x = points.get(slot).expect("missing slot point");
                for (axis, component) in p.iter().enumerate() {
                    angle += component.to_f64().unwrap() * x[axis];
                }
            }
            out = out.add(&m.scale(Complex64::from_polar(1.0, angle)));
        }
        out
    }
}

/// Star commutator `a * b -/+ b * a` (minus for `sign = +1`, the bosonic
/// commutator; plus for `sign = -1`, the fermionic anticommutator).
pub fn star_bracket(
    a: &FieldElement,
    b: &FieldElement,
    theta: &ThetaMatrix,
    exchange_sign: f64,
) -> Result<FieldElement, FockError> {
    let ab = a.star(b, theta)?;
    let ba = b.star(a, theta)?;
    Ok(ab.sub(&ba.scale(Complex64::new(exchange_sign, 0.0))))
}

/// The discrete delta `sum_p exp(i p . (x_s - x_t))` times the identity.
pub fn discrete_delta(modes: &ModeBasis, fock_dim: usize, slot_a: usize, slot_b: usize) -> FieldElement {
    let mut out = FieldElement::zero(modes.dim(), fock_dim);
    for p in modes.momenta() {
        out.add_term(
            vec![(slot_a, p.clone()), (slot_b, neg_momentum(p))],
            vec![BigRational::zero(); modes.dim()],
            SparseMatrix::identity(fock_dim),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::Statistics;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn setup(stats: Statistics) -> (CcrAlgebra, ThetaMatrix) {
        let modes = ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let alg = CcrAlgebra::build(&modes, stats, 3).unwrap();
        (alg, ThetaMatrix::scalar_2d(rat(1, 2)))
    }

    fn exchange_sign(stats: Statistics) -> f64 {
        match stats {
            Statistics::Bose => 1.0,
            Statistics::Fermi => -1.0,
        }
    }

    #[test]
    fn field_field_bracket_vanishes() {
        for stats in [Statistics::Bose, Statistics::Fermi] {
            let (alg, theta) = setup(stats);
            let phi_x = FieldElement::annihilation_field(&alg, 0);
            let phi_y = FieldElement::annihilation_field(&alg, 1);
            let bracket = star_bracket(&phi_x, &phi_y, &theta, exchange_sign(stats)).unwrap();
            assert!(bracket.max_abs() < 1e-14, "stats {:?}", stats);
        }
    }

    #[test]
    fn field_conjugate_bracket_is_discrete_delta() {
        for stats in [Statistics::Bose, Statistics::Fermi] {
            let (alg, theta) = setup(stats);
            let nmax = alg.basis.nmax() as u32;
            let phi_x = FieldElement::annihilation_field(&alg, 0);
            let phi_star_y = FieldElement::creation_field(&alg, 1);
            let bracket = star_bracket(&phi_x, &phi_star_y, &theta, exchange_sign(stats)).unwrap();
            let delta = discrete_delta(&alg.modes, alg.basis.dim(), 0, 1);
            let diff = bracket.sub(&delta);
            // exact away from the truncation edge
            let basis = &alg.basis;
            let interior = |col: usize| basis.total_number(col) < nmax;
            assert!(diff.max_abs_on_columns(interior) < 1e-13, "stats {:?}", stats);
        }
    }

    #[test]
    fn total_field_star_is_pointwise() {
        // phi(x) * w = phi(x) w for a spanning set of operator-valued w
        let (alg, theta) = setup(Statistics::Bose);
        let phi = FieldElement::annihilation_field(&alg, 0);
        let mut witnesses: Vec<FieldElement> = Vec::new();
        for p in 0..alg.modes.len() {
            witnesses.push(FieldElement::from_operator(
                2,
                alg.create[p].clone(),
                alg.modes.momentum(p).to_vec(),
            ));
            witnesses.push(FieldElement::from_operator(
                2,
                alg.annihilate[p].clone(),
                neg_momentum(alg.modes.momentum(p)),
            ));
        }
        // a mixed element with nonzero total momentum on another slot
        witnesses.push(
            FieldElement::plane_wave(2, alg.basis.dim(), 1, vec![rat(2, 1), rat(-1, 3)])
                .mul(&FieldElement::from_operator(
                    2,
                    alg.create[1].clone(),
                    alg.modes.momentum(1).to_vec(),
                )),
        );
        for w in &witnesses {
            let star = phi.star(w, &theta).unwrap();
            let plain = phi.mul(w);
            assert!(star.sub(&plain).max_abs() < 1e-13);
            let star_r = w.star(&phi, &theta).unwrap();
            let plain_r = w.mul(&phi);
            assert!(star_r.sub(&plain_r).max_abs() < 1e-13);
        }
    }

    #[test]
    fn star_differs_from_pointwise_for_noninvariant_elements() {
        let (alg, theta) = setup(Statistics::Bose);
        // single-term factors with nonzero total momentum
        let a = FieldElement::from_operator(2, alg.create[0].clone(), alg.modes.momentum(0).to_vec());
        let b = FieldElement::from_operator(2, alg.create[1].clone(), alg.modes.momentum(1).to_vec());
        let star = a.star(&b, &theta).unwrap();
        let plain = a.mul(&b);
        assert!(star.sub(&plain).max_abs() > 1e-3);
    }

    #[test]
    fn number_operator_is_star_insensitive() {
        let (alg, theta) = setup(Statistics::Bose);
        let mut star_number = FieldElement::zero(2, alg.basis.dim());
        let mut plain_number = SparseMatrix::zero(alg.basis.dim());
        for p in 0..alg.modes.len() {
            let cre = FieldElement::from_operator(2, alg.create[p].clone(), alg.modes.momentum(p).to_vec());
            let ann = FieldElement::from_operator(
                2,
                alg.annihilate[p].clone(),
                neg_momentum(alg.modes.momentum(p)),
            );
            star_number = star_number.add(&cre.star(&ann, &theta).unwrap());
            plain_number = plain_number.add(&alg.create[p].mul(&alg.annihilate[p]));
        }
        let as_field = FieldElement::from_operator(2, plain_number, vec![rat(0, 1), rat(0, 1)]);
        assert!(star_number.sub(&as_field).max_abs() < 1e-13);
    }

    #[test]
    fn braided_reordering_of_function_legs() {
        // f(x1) * f'(x2) * f''(x1) = R-phase * f'(x2) * f(x1) * f''(x1),
        // the phase being exp(i q theta p) for p the momentum of f and q of f'
        let (alg, theta) = setup(Statistics::Bose);
        let dim = alg.basis.dim();
        let p = vec![rat(1, 1), rat(0, 1)];
        let q = vec![rat(0, 1), rat(1, 1)];
        let r = vec![rat(1, 2), rat(1, 3)];
        let f = FieldElement::plane_wave(2, dim, 0, p.clone());
        let fp = FieldElement::plane_wave(2, dim, 1, q.clone());
        let fpp = FieldElement::plane_wave(2, dim, 0, r);
        let lhs = f.star(&fp, &theta).unwrap().star(&fpp, &theta).unwrap();
        let phase = crate::hopf::phases::braiding_exponent(&theta, &p, &q);
        let rhs = fp
            .star(&f, &theta)
            .unwrap()
            .star(&fpp, &theta)
            .unwrap()
            .scale(Complex64::from_polar(1.0, phase.to_f64().unwrap()));
        assert!(lhs.sub(&rhs).max_abs() < 1e-14);
    }
}
