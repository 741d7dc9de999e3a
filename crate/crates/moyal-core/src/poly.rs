//! Sparse multivariate polynomials over exact complex rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::CoreError;
use crate::multi_index::MultiIndex;
use crate::scalar::Scalar;

/// A polynomial in `nvars` commuting coordinates, stored term-sparse.
///
/// Zero coefficients are never stored and terms sit in a `BTreeMap` under the
/// graded-lex order, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyExpr {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl PolyExpr {
    pub fn zero(nvars: usize) -> Self {
        PolyExpr {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = PolyExpr::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        PolyExpr::constant(nvars, Scalar::one())
    }

    /// The coordinate `x_{var}` (zero-based).
    pub fn coordinate(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "coordinate index out of range");
        let mut p = PolyExpr::zero(nvars);
        p.terms.insert(MultiIndex::unit(nvars, var), Scalar::one());
        p
    }

    pub fn monomial(nvars: usize, exps: MultiIndex, coeff: Scalar) -> Self {
        assert_eq!(exps.nvars(), nvars);
        let mut p = PolyExpr::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Self {
        let mut p = PolyExpr::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &MultiIndex) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: MultiIndex, c: Scalar) {
        assert_eq!(e.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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

    pub fn scale(&self, c: &Scalar) -> PolyExpr {
        if c.is_zero() {
            return PolyExpr::zero(self.nvars);
        }
        PolyExpr {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Partial derivative with respect to coordinate `var`.
    pub fn derivative(&self, var: usize) -> PolyExpr {
        let mut out = PolyExpr::zero(self.nvars);
        for (e, c) in &self.terms {
            if let Some(lower) = e.lowered(var) {
                let factor = Scalar::from_int(e[var] as i64);
                out.add_term(lower, c * &factor);
            }
        }
        out
    }

    /// Iterated derivative `prod_a (d/dx_a)^{order_a}`.
    pub fn derivative_multi(&self, order: &MultiIndex) -> PolyExpr {
        let mut out = self.clone();
        for var in 0..self.nvars {
            for _ in 0..order[var] {
                out = out.derivative(var);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    /// Complex conjugate of the function (coordinates are real).
    pub fn conj(&self) -> PolyExpr {
        PolyExpr {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    /// Re-embeds into a wider variable set, mapping variable `a` to `offset + a`.
    pub fn embed(&self, nvars: usize, offset: usize) -> PolyExpr {
        let mut out = PolyExpr::zero(nvars);
        for (e, c) in &self.terms {
            out.add_term(e.embed(nvars, offset), c.clone());
        }
        out
    }

    /// Substitutes each variable by a linear form in new variables.
    ///
    /// `forms[a]` is the image of `x_a`; all forms must share a variable count.
    pub fn substitute_linear(&self, forms: &[PolyExpr]) -> Result<PolyExpr, CoreError> {
        if forms.len() != self.nvars {
            return Err(CoreError::VariableMismatch {
                lhs: self.nvars,
                rhs: forms.len(),
            });
        }
        let target = forms.first().map(|f| f.nvars()).unwrap_or(0);
        for f in forms {
            if f.nvars() != target {
                return Err(CoreError::VariableMismatch {
                    lhs: target,
                    rhs: f.nvars(),
                });
            }
        }
        let mut out = PolyExpr::zero(target);
        for (e, c) in &self.terms {
            let mut term = PolyExpr::constant(target, c.clone());
            for var in 0..self.nvars {
                for _ in 0..e[var] {
                    term = &term * &forms[var];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a real point in double precision.
    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = 1.0;
            for (var, &exp) in e.exps().iter().enumerate() {
                m *= x[var].powi(exp as i32);
            }
            acc += c.to_complex64() * m;
        }
        acc
    }

    /// Evaluates at an exact rational point.
    pub fn eval_rational(&self, x: &[BigRational]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut m = Scalar::one();
            for (var, &exp) in e.exps().iter().enumerate() {
                for _ in 0..exp {
                    m = &m * &Scalar::from_real(x[var].clone());
                }
            }
            acc += &(c * &m);
        }
        acc
    }

    fn check_nvars(&self, other: &PolyExpr) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in different variable sets"
        );
    }
}

impl Add for &PolyExpr {
    type Output = PolyExpr;
    fn add(self, rhs: &PolyExpr) -> PolyExpr {
        self.check_nvars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyExpr {
    type Output = PolyExpr;
    fn sub(self, rhs: &PolyExpr) -> PolyExpr {
        self.check_nvars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: &PolyExpr) -> PolyExpr {
        self.check_nvars(rhs);
        let mut out = PolyExpr::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &PolyExpr {
    type Output = PolyExpr;
    fn neg(self) -> PolyExpr {
        PolyExpr {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Debug for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &exp)| exp > 0)
                    .map(|(var, &exp)| {
                        if exp == 1 {
                            format!("x{}", var + 1)
                        } else {
                            format!("x{}^{}", var + 1, exp)
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    format!("({})", c)
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("({})*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(nvars: usize, v: usize) -> PolyExpr {
        PolyExpr::coordinate(nvars, v)
    }

    #[test]
    fn ring_identities() {
        let a = &x(2, 0) + &PolyExpr::constant(2, Scalar::ratio(1, 2));
        let b = &x(2, 1) * &x(2, 1);
        let c = &x(2, 0) * &x(2, 1);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a * &PolyExpr::one(2), a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn no_zero_terms_survive() {
        let a = x(2, 0);
        let diff = &a - &a;
        assert_eq!(diff.num_terms(), 0);
        let mut p = PolyExpr::zero(2);
        p.add_term(MultiIndex::unit(2, 0), Scalar::one());
        p.add_term(MultiIndex::unit(2, 0), Scalar::from_int(-1));
        assert!(p.is_zero());
    }

    #[test]
    fn derivatives() {
        // d/dx1 (x1^2 x2) = 2 x1 x2
        let p = &(&x(2, 0) * &x(2, 0)) * &x(2, 1);
        let d = p.derivative(0);
        let expect = (&x(2, 0) * &x(2, 1)).scale(&Scalar::from_int(2));
        assert_eq!(d, expect);
        let dd = p.derivative_multi(&MultiIndex::new(vec![2, 1]));
        assert_eq!(dd, PolyExpr::constant(2, Scalar::from_int(2)));
    }

    #[test]
    fn linear_substitution_expands_differences() {
        // xi = u - v in one variable: (xi)^2 -> u^2 - 2uv + v^2
        let sq = &x(1, 0) * &x(1, 0);
        let diff = &x(2, 0) - &x(2, 1);
        let out = sq.substitute_linear(&[diff]).unwrap();
        let expect = &(&(&x(2, 0) * &x(2, 0)) - &(&x(2, 0) * &x(2, 1)).scale(&Scalar::from_int(2)))
            + &(&x(2, 1) * &x(2, 1));
        assert_eq!(out, expect);
    }

    #[test]
    fn evaluation_matches_structure() {
        let p = &(&x(2, 0) * &x(2, 1)).scale(&Scalar::ratio(1, 2)) + &PolyExpr::one(2);
        let v = p.eval_f64(&[2.0, 3.0]);
        assert!((v.re - 4.0).abs() < 1e-15 && v.im.abs() < 1e-15);
    }
}
