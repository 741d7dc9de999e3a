//! The twist, braiding and cocycle data in the plane-wave representation.
//!
//! On a finite mode basis the twist acts diagonally, so every representation-
//! level object reduces to a tensor of unimodular phases `exp(i * x)` whose
//! exponents are exact rationals (momenta are rational and so is the
//! deformation matrix). Exponents are kept exact and only exponentiated when
//! a complex number is required, so identities like the counit conditions and
//! `beta = 1` hold to rounding of a single `exp` call.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::HopfError;
use crate::theta::ThetaMatrix;

use super::modes::{add_momenta, neg_momentum, ModeBasis};

/// A diagonal tensor of phases on `order`-tuples of modes, stored through its
/// exact rational exponents: entry `t` is `exp(i * exponents[t])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseTensor {
    order: usize,
    num_modes: usize,
    exponents: Vec<BigRational>,
}

impl PhaseTensor {
    pub fn identity(order: usize, num_modes: usize) -> Self {
        PhaseTensor {
            order,
            num_modes,
            exponents: vec![BigRational::zero(); num_modes.pow(order as u32)],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    fn flat(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.order);
        tuple.iter().fold(0, |acc, &i| acc * self.num_modes + i)
    }

    pub fn exponent(&self, tuple: &[usize]) -> &BigRational {
        &self.exponents[self.flat(tuple)]
    }

    pub fn set_exponent(&mut self, tuple: &[usize], e: BigRational) {
        let idx = self.flat(tuple);
        self.exponents[idx] = e;
    }

    pub fn phase(&self, tuple: &[usize]) -> Complex64 {
        Complex64::from_polar(1.0, self.exponent(tuple).to_f64().unwrap())
    }

    /// Pointwise product of two phase tensors (sum of exponents).
    pub fn mul(&self, rhs: &PhaseTensor) -> PhaseTensor {
        assert_eq!(self.order, rhs.order);
        assert_eq!(self.num_modes, rhs.num_modes);
        PhaseTensor {
            order: self.order,
            num_modes: self.num_modes,
            exponents: self
                .exponents
                .iter()
                .zip(&rhs.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn inverse(&self) -> PhaseTensor {
        PhaseTensor {
            order: self.order,
            num_modes: self.num_modes,
            exponents: self.exponents.iter().map(|e| -e.clone()).collect(),
        }
    }

    /// Largest modulus of the entrywise difference with `rhs`.
    pub fn max_phase_distance(&self, rhs: &PhaseTensor) -> f64 {
        self.exponents
            .iter()
            .zip(&rhs.exponents)
            .map(|(a, b)| {
                let pa = Complex64::from_polar(1.0, a.to_f64().unwrap());
                let pb = Complex64::from_polar(1.0, b.to_f64().unwrap());
                (pa - pb).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let order = self.order;
        let num_modes = self.num_modes;
        (0..self.exponents.len()).map(move |mut flat| {
            let mut tuple = vec![0; order];
            for slot in (0..order).rev() {
                tuple[slot] = flat % num_modes;
                flat /= num_modes;
            }
            tuple
        })
    }
}

/// Exponent of the two-slot twist on momenta `(p, q)`: `(1/2) p theta q`,
/// i.e. the twist phase is `exp(+ (i/2) p theta q)`.
pub fn twist_exponent(theta: &ThetaMatrix, p: &[BigRational], q: &[BigRational]) -> BigRational {
    theta.bilinear(p, q) / BigRational::from_integer(2.into())
}

fn check_dim(modes: &ModeBasis, theta: &ThetaMatrix) -> Result<(), HopfError> {
    if modes.dim() != theta.dim() {
        return Err(HopfError::ModeDimension {
            expected: theta.dim(),
            got: modes.dim(),
        });
    }
    Ok(())
}

/// The `n`-fold twist in representation, built by the recursion
/// `F^{n+1} = (1 (x) F) [(id^{(n-1)} (x) Delta) F^n]`; the coproduct acts by
/// adding the momenta of the last two slots.
pub fn f_matrix(modes: &ModeBasis, n: usize, theta: &ThetaMatrix) -> Result<PhaseTensor, HopfError> {
    if n < 2 {
        return Err(HopfError::CoproductOrder(n));
    }
    check_dim(modes, theta)?;
    let m = modes.len();
    let mut out = PhaseTensor::identity(n, m);
    if n == 2 {
        for t in out.clone().tuples() {
            let e = twist_exponent(theta, modes.momentum(t[0]), modes.momentum(t[1]));
            out.set_exponent(&t, e);
        }
        return Ok(out);
    }
    for t in out.clone().tuples() {
        // (id^{(n-2)} (x) Delta) F^{n-1}: the last slot momentum is the sum
        let merged = add_momenta(modes.momentum(t[n - 2]), modes.momentum(t[n - 1]));
        let mut e = merged_twist_exponent(modes, &t[..n - 2], &merged, theta, n - 1);
        // times (1^{(n-2)} (x) F) on the last two slots
        e += twist_exponent(theta, modes.momentum(t[n - 2]), modes.momentum(t[n - 1]));
        out.set_exponent(&t, e);
    }
    Ok(out)
}

/// Exponent of the `n`-slot twist where the final slot carries a merged
/// momentum that need not be a basis mode; recursion mirrors [`f_matrix`].
fn merged_twist_exponent(
    modes: &ModeBasis,
    head: &[usize],
    merged: &[BigRational],
    theta: &ThetaMatrix,
    n: usize,
) -> BigRational {
    if n == 2 {
        return twist_exponent(theta, modes.momentum(head[0]), merged);
    }
    let merged_last = add_momenta(modes.momentum(head[n - 2]), merged);
    let mut e = merged_twist_exponent(modes, &head[..n - 2], &merged_last, theta, n - 1);
    e += twist_exponent(theta, modes.momentum(head[n - 2]), merged);
    e
}

/// The braiding `R = tau(F) F^{-1}` in representation: the phase on
/// `(e_p, e_q)` is `exp(i q theta p)`.
pub fn r_matrix(modes: &ModeBasis, theta: &ThetaMatrix) -> Result<PhaseTensor, HopfError> {
    check_dim(modes, theta)?;
    let f = f_matrix(modes, 2, theta)?;
    let mut flipped = PhaseTensor::identity(2, modes.len());
    for t in f.tuples() {
        flipped.set_exponent(&[t[1], t[0]], f.exponent(&t).clone());
    }
    Ok(flipped.mul(&f.inverse()))
}

/// Exact rational exponent of the braiding phase on momenta `(p, q)`:
/// `R(p, q) = exp(i * q theta p)`.
pub fn braiding_exponent(theta: &ThetaMatrix, p: &[BigRational], q: &[BigRational]) -> BigRational {
    theta.bilinear(q, p)
}

/// Evaluates both sides of the cocycle condition
/// `(F (x) 1)[(Delta (x) id) F] = (1 (x) F)[(id (x) Delta) F]`
/// independently on mode triples and returns the largest entry distance.
pub fn cocycle_residual(modes: &ModeBasis, theta: &ThetaMatrix) -> Result<f64, HopfError> {
    check_dim(modes, theta)?;
    let m = modes.len();
    let mut lhs = PhaseTensor::identity(3, m);
    let mut rhs = PhaseTensor::identity(3, m);
    for t in lhs.clone().tuples() {
        let p = modes.momentum(t[0]);
        let q = modes.momentum(t[1]);
        let r = modes.momentum(t[2]);
        // (Delta (x) id) F puts p + q against r; (F (x) 1) adds the (p, q) phase
        let el = twist_exponent(theta, &add_momenta(p, q), r) + twist_exponent(theta, p, q);
        // (id (x) Delta) F puts p against q + r; (1 (x) F) adds the (q, r) phase
        let er = twist_exponent(theta, p, &add_momenta(q, r)) + twist_exponent(theta, q, r);
        lhs.set_exponent(&t, el);
        rhs.set_exponent(&t, er);
    }
    Ok(lhs.max_phase_distance(&rhs))
}

/// Counit conditions `(eps (x) id) F = (id (x) eps) F = 1` in representation:
/// returns the largest deviation of the zero-slot phases from one.
pub fn counit_residual(modes: &ModeBasis, theta: &ThetaMatrix) -> Result<f64, HopfError> {
    check_dim(modes, theta)?;
    let zero = vec![BigRational::zero(); modes.dim()];
    let mut worst: f64 = 0.0;
    for p in modes.momenta() {
        let left = twist_exponent(theta, &zero, p);
        let right = twist_exponent(theta, p, &zero);
        for e in [left, right] {
            let phase = Complex64::from_polar(1.0, e.to_f64().unwrap());
            worst = worst.max((phase - Complex64::new(1.0, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// The element `beta = F^a S(F_a)` evaluated on each mode: the antipode
/// negates the second-slot momentum and multiplication merges the slots, so
/// the phase on `e_p` is `exp((i/2) p theta (-p))`, identically one for an
/// antisymmetric deformation. Returns the largest deviation from one.
pub fn beta_residual(modes: &ModeBasis, theta: &ThetaMatrix) -> Result<f64, HopfError> {
    check_dim(modes, theta)?;
    let mut worst: f64 = 0.0;
    for p in modes.momenta() {
        let e = twist_exponent(theta, p, &neg_momentum(p));
        let phase = Complex64::from_polar(1.0, e.to_f64().unwrap());
        worst = worst.max((phase - Complex64::new(1.0, 0.0)).norm());
        // the exponent itself must vanish exactly
        debug_assert!(e.is_zero());
    }
    Ok(worst)
}
