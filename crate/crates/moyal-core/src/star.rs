//! The Moyal star product on polynomials.
//!
//! The product is the terminating bidifferential series
//!
//! ```text
//! a * b = sum_k (1/k!) (i/2)^k Theta^{h1 k1} ... Theta^{hk kk}
//!         (d_{h1} ... d_{hk} a) (d_{k1} ... d_{kk} b)
//! ```
//!
//! with the sign convention fixed so that `[x^h *, x^k] = +i Theta^{hk}`.
//! Grouping the ordered index tuples by their contraction pattern turns the
//! series into a finite sum over nonnegative integer matrices `A` supported on
//! the nonzero entries of `Theta`:
//!
//! ```text
//! a * b = sum_A (i/2)^{|A|} (Theta^A / A!) (d^{rows A} a) (d^{cols A} b)
//! ```
//!
//! which is what the implementation enumerates. On polynomials the sum is
//! finite because high derivatives vanish, so every result is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::CoreError;
use crate::multi_index::{factorial_u32, MultiIndex};
use crate::poly::PolyExpr;
use crate::scalar::Scalar;
use crate::theta::ThetaMatrix;

/// One contraction pattern of the star series: the scalar weight
/// `(i/2)^{|A|} Theta^A / A!` together with the row and column profiles
/// (the derivative multi-indices hitting the left and right factor).
#[derive(Clone, Debug)]
pub struct Contraction {
    pub weight: Scalar,
    pub left: MultiIndex,
    pub right: MultiIndex,
}

/// Enumerates all contraction patterns with `|rows| <= left_bound` and
/// `|cols| <= right_bound`, including the empty pattern.
pub fn contractions(theta: &ThetaMatrix, left_bound: u32, right_bound: u32) -> Vec<Contraction> {
    let support = theta.support();
    let nvars = theta.dim();
    let mut out = Vec::new();
    let half_i = Scalar::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));

    struct Rec<'a> {
        support: &'a [(usize, usize)],
        theta: &'a ThetaMatrix,
        half_i: Scalar,
        out: Vec<Contraction>,
    }

    impl Rec<'_> {
        fn go(&mut self, pos: usize, budget: u32, weight: Scalar, left: MultiIndex, right: MultiIndex) {
            if pos == self.support.len() {
                self.out.push(Contraction { weight, left, right });
                return;
            }
            let (h, k) = self.support[pos];
            let entry = Scalar::from_real(self.theta.get(h, k).clone());
            let mut w = weight.clone();
            for count in 0..=budget {
                if count > 0 {
                    // incremental (i/2) * theta^{hk} / count
                    let step = &(&self.half_i * &entry)
                        * &Scalar::from_real(BigRational::new(BigInt::one(), count.into()));
                    w = &w * &step;
                }
                self.go(
                    pos + 1,
                    budget - count,
                    w.clone(),
                    left.raised(h, count),
                    right.raised(k, count),
                );
            }
        }
    }

    let budget = left_bound.min(right_bound);
    let mut rec = Rec {
        support: &support,
        theta,
        half_i,
        out: Vec::new(),
    };
    rec.go(
        0,
        budget,
        Scalar::one(),
        MultiIndex::zero(nvars),
        MultiIndex::zero(nvars),
    );
    out.append(&mut rec.out);
    out
}

fn check_compat(a: &PolyExpr, b: &PolyExpr, theta: &ThetaMatrix) -> Result<(), CoreError> {
    if a.nvars() != b.nvars() {
        return Err(CoreError::VariableMismatch {
            lhs: a.nvars(),
            rhs: b.nvars(),
        });
    }
    if theta.dim() != a.nvars() {
        return Err(CoreError::DimensionMismatch {
            expected: a.nvars(),
            got: theta.dim(),
        });
    }
    Ok(())
}

/// The Moyal star product `a * b`, exact.
///
/// Works monomial pair by monomial pair: for each pair the admissible
/// contraction matrices are bounded by the actual exponents, which keeps
/// the enumeration tight on sparse inputs.
pub fn moyal_star(a: &PolyExpr, b: &PolyExpr, theta: &ThetaMatrix) -> Result<PolyExpr, CoreError> {
    check_compat(a, b, theta)?;
    let nvars = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Ok(PolyExpr::zero(nvars));
    }
    let support = theta.support();
    let half_i = Scalar::from_imag(BigRational::new(1.into(), 2.into()));
    let step_factors: Vec<Scalar> = support
        .iter()
        .map(|&(h, k)| &half_i * &Scalar::from_real(theta.get(h, k).clone()))
        .collect();
    let mut out = PolyExpr::zero(nvars);
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let mut left: Vec<u32> = ea.exps().to_vec();
            let mut right: Vec<u32> = eb.exps().to_vec();
            star_monomial_pair(
                &mut out,
                &support,
                &step_factors,
                0,
                &mut left,
                &mut right,
                ca * cb,
            );
        }
    }
    Ok(out)
}

/// Accumulates all contractions of a single monomial pair.
///
/// `left` and `right` hold the still-underived exponents; each derivative
/// step multiplies the weight by `(i/2) theta^{hk}` and the falling
/// exponents, divided by the step count for the `1/A!` factor.
fn star_monomial_pair(
    out: &mut PolyExpr,
    support: &[(usize, usize)],
    step_factors: &[Scalar],
    pos: usize,
    left: &mut Vec<u32>,
    right: &mut Vec<u32>,
    weight: Scalar,
) {
    if pos == support.len() {
        let exps: Vec<u32> = left.iter().zip(right.iter()).map(|(l, r)| l + r).collect();
        out.add_term(MultiIndex::new(exps), weight);
        return;
    }
    let (h, k) = support[pos];
    let max_count = left[h].min(right[k]);
    // count = 0 branch
    star_monomial_pair(out, support, step_factors, pos + 1, left, right, weight.clone());
    let mut w = weight;
    for step in 1..=max_count {
        let falling = Scalar::from_real(BigRational::new(
            BigInt::from(left[h]) * BigInt::from(right[k]),
            BigInt::from(step),
        ));
        w = &(&w * &step_factors[pos]) * &falling;
        left[h] -= 1;
        right[k] -= 1;
        star_monomial_pair(out, support, step_factors, pos + 1, left, right, w.clone());
    }
    // restore the exponents consumed by this support entry
    left[h] += max_count;
    right[k] += max_count;
}

/// The star commutator `[a *, b] = a * b - b * a`, exact.
pub fn star_commutator(a: &PolyExpr, b: &PolyExpr, theta: &ThetaMatrix) -> Result<PolyExpr, CoreError> {
    let ab = moyal_star(a, b, theta)?;
    let ba = moyal_star(b, a, theta)?;
    Ok(&ab - &ba)
}

/// Expands left star multiplication by `c` into a pointwise differential
/// operator: `(c *) g = sum_d coeff_d(x) d^d g`. The map sends each derivative
/// multi-index to its polynomial coefficient.
pub fn left_star_expansion(
    c: &PolyExpr,
    theta: &ThetaMatrix,
) -> Result<BTreeMap<MultiIndex, PolyExpr>, CoreError> {
    if theta.dim() != c.nvars() {
        return Err(CoreError::DimensionMismatch {
            expected: c.nvars(),
            got: theta.dim(),
        });
    }
    let mut out: BTreeMap<MultiIndex, PolyExpr> = BTreeMap::new();
    for con in contractions(theta, c.degree(), u32::MAX) {
        let dc = c.derivative_multi(&con.left);
        if dc.is_zero() {
            continue;
        }
        let entry = out
            .entry(con.right.clone())
            .or_insert_with(|| PolyExpr::zero(c.nvars()));
        *entry = &*entry + &dc.scale(&con.weight);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Slow reference evaluation of the star series as a sum over *ordered*
/// derivative index tuples. Exponential in the order, only suitable for
/// low-degree cross-checks of [`moyal_star`].
pub fn moyal_star_ordered_oracle(
    a: &PolyExpr,
    b: &PolyExpr,
    theta: &ThetaMatrix,
) -> Result<PolyExpr, CoreError> {
    check_compat(a, b, theta)?;
    let nvars = a.nvars();
    let max_order = a.degree().min(b.degree());
    let mut out = PolyExpr::zero(nvars);
    let half_i = Scalar::from_imag(BigRational::new(1.into(), 2.into()));
    // state: list of (pair sequence) built incrementally
    fn rec(
        order: u32,
        depth: u32,
        theta: &ThetaMatrix,
        da: &PolyExpr,
        db: &PolyExpr,
        weight: &Scalar,
        acc: &mut PolyExpr,
    ) {
        if depth == order {
            *acc = &*acc + &(da * db).scale(weight);
            return;
        }
        for (h, k) in theta.support() {
            let dah = da.derivative(h);
            if dah.is_zero() {
                continue;
            }
            let dbk = db.derivative(k);
            if dbk.is_zero() {
                continue;
            }
            let w = weight * &Scalar::from_real(theta.get(h, k).clone());
            rec(order, depth + 1, theta, &dah, &dbk, &w, acc);
        }
    }
    for order in 0..=max_order {
        let prefactor = &half_i.pow(order)
            * &Scalar::from_real(BigRational::new(BigInt::one(), factorial_u32(order)));
        let mut acc = PolyExpr::zero(nvars);
        rec(order, 0, theta, a, b, &prefactor, &mut acc);
        out = &out + &acc;
    }
    Ok(out)
}
