//! Tensor powers of the enveloping algebra and the (twisted) coproducts.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::HopfError;
use crate::scalar::Scalar;
use crate::theta::ThetaMatrix;

use super::uea::{Generator, UEAElement, Word};

/// An element of the `n`-fold tensor power, each factor a PBW word.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorUEA {
    dim: usize,
    factors: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorUEA {
    pub fn zero(dim: usize, factors: usize) -> Self {
        TensorUEA {
            dim,
            factors,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(dim: usize, factors: usize) -> Self {
        let mut t = TensorUEA::zero(dim, factors);
        t.add_term(vec![Word::empty(dim); factors], Scalar::one());
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: Scalar) {
        debug_assert_eq!(words.len(), self.factors);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(words) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &TensorUEA) -> TensorUEA {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TensorUEA) -> TensorUEA {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> TensorUEA {
        if s.is_zero() {
            return TensorUEA::zero(self.dim, self.factors);
        }
        TensorUEA {
            dim: self.dim,
            factors: self.factors,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Places an element into one tensor slot, identity elsewhere.
    pub fn from_slot(e: &UEAElement, slot: usize, factors: usize) -> TensorUEA {
        let dim = e.dim();
        let mut out = TensorUEA::zero(dim, factors);
        for (w, c) in e.terms() {
            let mut words = vec![Word::empty(dim); factors];
            words[slot] = w.clone();
            out.add_term(words, c.clone());
        }
        out
    }

    /// Slotwise product.
    pub fn mul(&self, rhs: &TensorUEA) -> TensorUEA {
        debug_assert_eq!(self.factors, rhs.factors);
        let mut out = TensorUEA::zero(self.dim, self.factors);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                // product of each slot, then recombine the linear combinations
                let mut partial: Vec<(Vec<Word>, Scalar)> =
                    vec![(Vec::with_capacity(self.factors), ca * cb)];
                for slot in 0..self.factors {
                    let mut left = UEAElement::zero(self.dim);
                    left.add_term(wa[slot].clone(), Scalar::one());
                    let mut right = UEAElement::zero(self.dim);
                    right.add_term(wb[slot].clone(), Scalar::one());
                    let prod = left.mul(&right);
                    let mut next = Vec::new();
                    for (words, coeff) in &partial {
                        for (w, c) in prod.terms() {
                            let mut ws = words.clone();
                            ws.push(w.clone());
                            next.push((ws, coeff * c));
                        }
                    }
                    partial = next;
                }
                for (words, coeff) in partial {
                    out.add_term(words, coeff);
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &TensorUEA) -> TensorUEA {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Applies the counit to one slot, producing an element on the remaining factors.
    pub fn counit_slot(&self, slot: usize) -> TensorUEA {
        let mut out = TensorUEA::zero(self.dim, self.factors - 1);
        for (words, c) in &self.terms {
            if words[slot].is_empty() {
                let mut rest = words.clone();
                rest.remove(slot);
                out.add_term(rest, c.clone());
            }
        }
        out
    }
}

impl fmt::Debug for TensorUEA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(words, c)| {
                let slots: Vec<String> = words.iter().map(|w| format!("{:?}", w)).collect();
                format!("({}) {}", c, slots.join(" (x) "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The primitive coproduct iterated to `n` factors: each generator is summed
/// over all slot placements, and the extension to words is multiplicative.
pub fn coproduct_iter(g: &UEAElement, n: usize) -> Result<TensorUEA, HopfError> {
    if n < 2 {
        return Err(HopfError::CoproductOrder(n));
    }
    let dim = g.dim();
    let mut out = TensorUEA::zero(dim, n);
    for (word, coeff) in g.terms() {
        let mut acc = TensorUEA::unit(dim, n);
        for gen in word.generators(dim) {
            let elem = UEAElement::generator(dim, gen).expect("stored word is valid");
            let mut delta = TensorUEA::zero(dim, n);
            for slot in 0..n {
                delta = delta.add(&TensorUEA::from_slot(&elem, slot, n));
            }
            acc = acc.mul(&delta);
        }
        out = out.add(&acc.scale(coeff));
    }
    Ok(out)
}

/// The twist exponent `X = (i/2) theta^{hk} P_h (x) P_k` on two chosen slots
/// of an `n`-factor tensor algebra.
fn twist_exponent(theta: &ThetaMatrix, slots: (usize, usize), n: usize) -> TensorUEA {
    let dim = theta.dim();
    let half_i = Scalar::from_imag(BigRational::new(1.into(), 2.into()));
    let mut out = TensorUEA::zero(dim, n);
    for (h, k) in theta.support() {
        let ph = UEAElement::generator(dim, Generator::P(h)).unwrap();
        let pk = UEAElement::generator(dim, Generator::P(k)).unwrap();
        let term = TensorUEA::from_slot(&ph, slots.0, n)
            .mul(&TensorUEA::from_slot(&pk, slots.1, n))
            .scale(&(&half_i * &Scalar::from_real(theta.get(h, k).clone())));
        out = out.add(&term);
    }
    out
}

/// Result of the twisted coproduct: the value and the order at which the
/// adjoint series terminated.
pub struct TwistedCoproduct {
    pub value: TensorUEA,
    pub order: usize,
}

const ADJOINT_SERIES_CAP: usize = 64;

/// The deformed coproduct, computed as the terminating adjoint series
/// `sum_k ad_X^k(Delta(g)) / k!` with `X` the twist exponent.
///
/// Each bracket with `X` trades a rotation generator for translations, so the
/// series stops after at most the rotation degree of `g`; inputs outside the
/// supported algebra would not terminate and are reported as errors.
pub fn twisted_coproduct(g: &UEAElement, theta: &ThetaMatrix) -> Result<TwistedCoproduct, HopfError> {
    let x = twist_exponent(theta, (0, 1), 2);
    let delta = coproduct_iter(g, 2)?;
    let mut value = delta.clone();
    let mut current = delta;
    let mut order = 0;
    while !current.is_zero() {
        if order >= ADJOINT_SERIES_CAP {
            return Err(HopfError::NonTerminatingSeries(ADJOINT_SERIES_CAP));
        }
        order += 1;
        let inv_order = Scalar::from_real(BigRational::new(1.into(), (order as i64).into()));
        current = x.commutator(&current).scale(&inv_order);
        value = value.add(&current);
    }
    Ok(TwistedCoproduct {
        value,
        order: order.saturating_sub(1),
    })
}

/// Applies the twisted coproduct to one slot of a tensor element, mapping
/// `n` factors to `n + 1`. Used for the coassociativity checks.
pub fn twisted_coproduct_slot(
    t: &TensorUEA,
    slot: usize,
    theta: &ThetaMatrix,
) -> Result<TensorUEA, HopfError> {
    let dim = t.dim();
    let n = t.factors();
    let mut out = TensorUEA::zero(dim, n + 1);
    for (words, coeff) in t.terms() {
        // expand the chosen slot word and re-tensor the rest around it
        let mut slot_elem = UEAElement::zero(dim);
        slot_elem.add_term(words[slot].clone(), Scalar::one());
        let hat = twisted_coproduct(&slot_elem, theta)?.value;
        for (pair_words, c) in hat.terms() {
            let mut new_words = Vec::with_capacity(n + 1);
            for (i, w) in words.iter().enumerate() {
                if i == slot {
                    new_words.push(pair_words[0].clone());
                    new_words.push(pair_words[1].clone());
                } else {
                    new_words.push(w.clone());
                }
            }
            out.add_term(new_words, coeff * c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn p(dim: usize, a: usize) -> UEAElement {
        UEAElement::generator(dim, Generator::P(a)).unwrap()
    }

    fn m(dim: usize, a: usize, b: usize) -> UEAElement {
        UEAElement::generator(dim, Generator::M(a, b)).unwrap()
    }

    #[test]
    fn primitive_coproduct_of_generators() {
        // Delta(P) = P (x) 1 + 1 (x) P
        let delta = coproduct_iter(&p(2, 0), 2).unwrap();
        let expect = TensorUEA::from_slot(&p(2, 0), 0, 2).add(&TensorUEA::from_slot(&p(2, 0), 1, 2));
        assert_eq!(delta, expect);

        // Delta^(3)(P) places the generator in each of the three slots
        let delta3 = coproduct_iter(&p(2, 0), 3).unwrap();
        let expect3 = TensorUEA::from_slot(&p(2, 0), 0, 3)
            .add(&TensorUEA::from_slot(&p(2, 0), 1, 3))
            .add(&TensorUEA::from_slot(&p(2, 0), 2, 3));
        assert_eq!(delta3, expect3);

        assert!(matches!(
            coproduct_iter(&p(2, 0), 1),
            Err(HopfError::CoproductOrder(1))
        ));
    }

    #[test]
    fn counit_axiom() {
        // (eps (x) id) Delta(g) = g for products of generators too
        let g = m(3, 0, 1).mul(&p(3, 2)).add(&p(3, 0).scale(&Scalar::ratio(2, 3)));
        let delta = coproduct_iter(&g, 2).unwrap();
        let collapsed = delta.counit_slot(0);
        let expect = TensorUEA::from_slot(&g, 0, 1);
        assert_eq!(collapsed, expect);
    }

    #[test]
    fn coproduct_is_algebra_map() {
        let g = m(3, 0, 2);
        let h = p(3, 1);
        let lhs = coproduct_iter(&g.mul(&h), 2).unwrap();
        let rhs = coproduct_iter(&g, 2).unwrap().mul(&coproduct_iter(&h, 2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_coproduct_fixes_translations() {
        let theta = ThetaMatrix::from_upper(3, &[(0, 1, rat(1, 2))]).unwrap();
        for a in 0..3 {
            let hat = twisted_coproduct(&p(3, a), &theta).unwrap();
            assert_eq!(hat.value, coproduct_iter(&p(3, a), 2).unwrap());
            assert_eq!(hat.order, 0);
        }
    }

    #[test]
    fn twisted_coproduct_of_rotation_matches_matrix_commutator() {
        // m = 3, theta^{12} only, g = M_{13}: the correction is
        // ([omega, theta])^{ab} P_a (x) P_b with omega the matrix of M_{13}.
        let dim = 3;
        let t = rat(1, 2);
        let theta = ThetaMatrix::from_upper(dim, &[(0, 1, t.clone())]).unwrap();
        let omega = ThetaMatrix::from_upper(dim, &[(0, 2, rat(1, 2))]).unwrap();
        let g = UEAElement::m_omega(dim, &omega).unwrap();
        assert_eq!(g, m(dim, 0, 2));

        let hat = twisted_coproduct(&g, &theta).unwrap();
        assert_eq!(hat.order, 1);

        // independent matrix oracle for [omega, theta]
        let mut correction = TensorUEA::zero(dim, 2);
        for a in 0..dim {
            for b in 0..dim {
                let mut entry = BigRational::zero();
                for c in 0..dim {
                    entry += omega.get(a, c) * theta.get(c, b) - theta.get(a, c) * omega.get(c, b);
                }
                if !entry.is_zero() {
                    let term = TensorUEA::from_slot(&p(dim, a), 0, 2)
                        .mul(&TensorUEA::from_slot(&p(dim, b), 1, 2))
                        .scale(&Scalar::from_real(entry));
                    correction = correction.add(&term);
                }
            }
        }
        assert!(!correction.is_zero(), "test requires a nonzero commutator");
        let expect = coproduct_iter(&g, 2).unwrap().add(&correction);
        assert_eq!(hat.value, expect);
    }

    #[test]
    fn planar_rotation_is_undeformed() {
        // m = 2: omega and theta are both multiples of eps, so [omega, theta] = 0
        let theta = ThetaMatrix::scalar_2d(rat(1, 3));
        let omega = ThetaMatrix::scalar_2d(rat(5, 7));
        let g = UEAElement::m_omega(2, &omega).unwrap();
        let hat = twisted_coproduct(&g, &theta).unwrap();
        assert_eq!(hat.value, coproduct_iter(&g, 2).unwrap());
    }

    #[test]
    fn twisted_coproduct_is_coassociative() {
        // (hat Delta (x) id) hat Delta = (id (x) hat Delta) hat Delta on generators
        let dim = 3;
        let theta =
            ThetaMatrix::from_upper(dim, &[(0, 1, rat(1, 2)), (1, 2, rat(-1, 3))]).unwrap();
        let gens = [p(dim, 0), m(dim, 0, 2), m(dim, 1, 2)];
        for g in &gens {
            let hat = twisted_coproduct(g, &theta).unwrap().value;
            let left = twisted_coproduct_slot(&hat, 0, &theta).unwrap();
            let right = twisted_coproduct_slot(&hat, 1, &theta).unwrap();
            assert_eq!(left, right);
        }
    }
}
