//! Star-differential operators and their pointwise normal form.
//!
//! A [`StarOperator`] is a finite sum of terms `(c(x) *) d^a` whose
//! coefficients act by *left star multiplication*; derivatives are undeformed
//! for the Moyal twist, so composition only needs the two rewriting rules
//!
//! ```text
//! (f *) o (g *) = ((f * g) *)
//! d_a o (f *)   = ((d_a f) *) + (f *) d_a
//! ```
//!
//! A [`DiffOperator`] is the same data with coefficients acting by ordinary
//! multiplication; converting between the two normal forms is exact and is
//! how built star operators are compared with pointwise closed forms.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::CoreError;
use crate::multi_index::MultiIndex;
use crate::poly::PolyExpr;
use crate::scalar::Scalar;
use crate::star::{left_star_expansion, moyal_star};
use crate::theta::ThetaMatrix;

/// `sum_a (c_a(x) *) d^a`, with merged derivative indices and no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct StarOperator {
    nvars: usize,
    terms: BTreeMap<MultiIndex, PolyExpr>,
}

/// `sum_a c_a(x) d^a` with pointwise coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    nvars: usize,
    terms: BTreeMap<MultiIndex, PolyExpr>,
}

macro_rules! operator_common {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(nvars: usize) -> Self {
                $ty {
                    nvars,
                    terms: BTreeMap::new(),
                }
            }

            pub fn identity(nvars: usize) -> Self {
                let mut op = $ty::zero(nvars);
                op.add_term(MultiIndex::zero(nvars), PolyExpr::one(nvars));
                op
            }

            /// A single partial derivative `d_a`.
            pub fn partial(nvars: usize, var: usize) -> Self {
                let mut op = $ty::zero(nvars);
                op.add_term(MultiIndex::unit(nvars, var), PolyExpr::one(nvars));
                op
            }

            /// A pure coefficient term (multiplication operator).
            pub fn from_poly(c: PolyExpr) -> Self {
                let nvars = c.nvars();
                let mut op = $ty::zero(nvars);
                op.add_term(MultiIndex::zero(nvars), c);
                op
            }

            pub fn nvars(&self) -> usize {
                self.nvars
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &PolyExpr)> {
                self.terms.iter()
            }

            pub fn add_term(&mut self, deriv: MultiIndex, coeff: PolyExpr) {
                assert_eq!(deriv.nvars(), self.nvars);
                assert_eq!(coeff.nvars(), self.nvars);
                if coeff.is_zero() {
                    return;
                }
                use std::collections::btree_map::Entry;
                match self.terms.entry(deriv) {
                    Entry::Vacant(v) => {
                        v.insert(coeff);
                    }
                    Entry::Occupied(mut o) => {
                        let sum = &*o.get() + &coeff;
                        if sum.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = sum;
                        }
                    }
                }
            }

            pub fn add(&self, rhs: &Self) -> Self {
                assert_eq!(self.nvars, rhs.nvars);
                let mut out = self.clone();
                for (d, c) in &rhs.terms {
                    out.add_term(d.clone(), c.clone());
                }
                out
            }

            pub fn sub(&self, rhs: &Self) -> Self {
                self.add(&rhs.scale(&Scalar::from_int(-1)))
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                if s.is_zero() {
                    return $ty::zero(self.nvars);
                }
                $ty {
                    nvars: self.nvars,
                    terms: self
                        .terms
                        .iter()
                        .map(|(d, c)| (d.clone(), c.scale(s)))
                        .collect(),
                }
            }

            /// Re-embeds into a wider variable set; variable `a` becomes `offset + a`.
            pub fn embed(&self, nvars: usize, offset: usize) -> Self {
                let mut out = $ty::zero(nvars);
                for (d, c) in &self.terms {
                    out.add_term(d.embed(nvars, offset), c.embed(nvars, offset));
                }
                out
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = self
                    .terms
                    .iter()
                    .map(|(d, c)| format!("[{:?}] d^{:?}", c, d))
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    };
}

operator_common!(StarOperator);
operator_common!(DiffOperator);

impl StarOperator {
    fn check(&self, theta: &ThetaMatrix) -> Result<(), CoreError> {
        if theta.dim() != self.nvars {
            return Err(CoreError::DimensionMismatch {
                expected: self.nvars,
                got: theta.dim(),
            });
        }
        Ok(())
    }

    /// Operator composition `self o rhs` in star normal form.
    pub fn compose(&self, rhs: &StarOperator, theta: &ThetaMatrix) -> Result<StarOperator, CoreError> {
        if self.nvars != rhs.nvars {
            return Err(CoreError::VariableMismatch {
                lhs: self.nvars,
                rhs: rhs.nvars,
            });
        }
        self.check(theta)?;
        let mut out = StarOperator::zero(self.nvars);
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                // d^a o (cb *) = sum_g C(a, g) ((d^g cb) *) d^{a - g}
                for g in da.sub_indices() {
                    let dcb = cb.derivative_multi(&g);
                    if dcb.is_zero() {
                        continue;
                    }
                    let binom = Scalar::from_real(BigRational::from_integer(da.binomial(&g)));
                    let coeff = moyal_star(ca, &dcb, theta)?.scale(&binom);
                    let deriv = da.checked_sub(&g).expect("g <= da").add(db);
                    out.add_term(deriv, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Applies the operator to a polynomial: each term acts as `c * (d^a f)`.
    pub fn apply(&self, f: &PolyExpr, theta: &ThetaMatrix) -> Result<PolyExpr, CoreError> {
        if self.nvars != f.nvars() {
            return Err(CoreError::VariableMismatch {
                lhs: self.nvars,
                rhs: f.nvars(),
            });
        }
        self.check(theta)?;
        let mut out = PolyExpr::zero(self.nvars);
        for (d, c) in &self.terms {
            let df = f.derivative_multi(d);
            if df.is_zero() {
                continue;
            }
            out = &out + &moyal_star(c, &df, theta)?;
        }
        Ok(out)
    }

    /// Formal L2 adjoint: conjugate coefficients, reverse factors, `d_a -> -d_a`.
    pub fn adjoint(&self, theta: &ThetaMatrix) -> Result<StarOperator, CoreError> {
        self.check(theta)?;
        let mut out = StarOperator::zero(self.nvars);
        for (d, c) in &self.terms {
            let sign = if d.degree() % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            };
            let cc = c.conj();
            // (-1)^{|a|} d^a o (cc *), re-normal-ordered
            for g in d.sub_indices() {
                let dcc = cc.derivative_multi(&g);
                if dcc.is_zero() {
                    continue;
                }
                let binom = Scalar::from_real(BigRational::from_integer(d.binomial(&g)));
                out.add_term(
                    d.checked_sub(&g).expect("g <= d"),
                    dcc.scale(&(&binom * &sign)),
                );
            }
        }
        Ok(out)
    }

    /// Expands every star coefficient into its pointwise bidifferential form.
    pub fn to_pointwise(&self, theta: &ThetaMatrix) -> Result<DiffOperator, CoreError> {
        self.check(theta)?;
        let mut out = DiffOperator::zero(self.nvars);
        for (d, c) in &self.terms {
            for (extra, coeff) in left_star_expansion(c, theta)? {
                out.add_term(d.add(&extra), coeff);
            }
        }
        Ok(out)
    }
}

impl DiffOperator {
    /// Ordinary operator composition via the Leibniz rule.
    pub fn compose(&self, rhs: &DiffOperator) -> DiffOperator {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = DiffOperator::zero(self.nvars);
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                for g in da.sub_indices() {
                    let dcb = cb.derivative_multi(&g);
                    if dcb.is_zero() {
                        continue;
                    }
                    let binom = Scalar::from_real(BigRational::from_integer(da.binomial(&g)));
                    out.add_term(
                        da.checked_sub(&g).expect("g <= da").add(db),
                        (ca * &dcb).scale(&binom),
                    );
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &PolyExpr) -> PolyExpr {
        assert_eq!(self.nvars, f.nvars());
        let mut out = PolyExpr::zero(self.nvars);
        for (d, c) in &self.terms {
            let df = f.derivative_multi(d);
            if !df.is_zero() {
                out = &out + &(c * &df);
            }
        }
        out
    }

    /// Rewrites the operator with star-multiplication coefficients.
    ///
    /// Inverse of [`StarOperator::to_pointwise`]; peels coefficients of
    /// maximal degree, whose star corrections all have strictly smaller
    /// coefficient degree.
    pub fn to_star(&self, theta: &ThetaMatrix) -> Result<StarOperator, CoreError> {
        if theta.dim() != self.nvars {
            return Err(CoreError::DimensionMismatch {
                expected: self.nvars,
                got: theta.dim(),
            });
        }
        let mut star = StarOperator::zero(self.nvars);
        let mut rest = self.clone();
        while !rest.is_zero() {
            let top = rest.terms.values().map(|c| c.degree()).max().unwrap();
            let leading: Vec<(MultiIndex, PolyExpr)> = rest
                .terms
                .iter()
                .filter(|(_, c)| c.degree() == top)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect();
            for (d, c) in leading {
                let mut piece = StarOperator::zero(self.nvars);
                piece.add_term(d, c);
                rest = rest.sub(&piece.to_pointwise(theta)?);
                star = star.add(&piece);
            }
        }
        Ok(star)
    }
}
