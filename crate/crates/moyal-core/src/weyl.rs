//! The Weyl map between ordinary polynomials and ordered star monomials.
//!
//! A star monomial is the star product of coordinates taken in ascending
//! variable order, e.g. `x1 * x1 * x3`. By the PBW property these monomials
//! span the same space as the ordinary ones degree by degree, so every
//! polynomial has a unique expansion; the expansion is computed by peeling
//! leading terms, which terminates because a star monomial equals its
//! ordinary counterpart plus lower-degree corrections.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::CoreError;
use crate::multi_index::MultiIndex;
use crate::poly::PolyExpr;
use crate::scalar::Scalar;
use crate::star::moyal_star;
use crate::theta::ThetaMatrix;

/// Coefficients of a polynomial over the ordered star-monomial basis.
///
/// The multi-index records how often each coordinate appears in the star
/// monomial; ascending variable order makes the representation canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct StarPolyCoeffs {
    nvars: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl StarPolyCoeffs {
    pub fn zero(nvars: usize) -> Self {
        StarPolyCoeffs {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, e: &MultiIndex) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn insert(&mut self, e: MultiIndex, c: Scalar) {
        if !c.is_zero() {
            self.coeffs.insert(e, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for StarPolyCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("({}) [{:?}]*", c, e))
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Evaluates the ordered star monomial `x^{h1} * x^{h2} * ...` for the
/// ascending coordinate list encoded by `exps`.
pub fn star_monomial(exps: &MultiIndex, theta: &ThetaMatrix) -> Result<PolyExpr, CoreError> {
    let nvars = exps.nvars();
    let mut acc = PolyExpr::one(nvars);
    for var in 0..nvars {
        let coord = PolyExpr::coordinate(nvars, var);
        for _ in 0..exps[var] {
            acc = moyal_star(&acc, &coord, theta)?;
        }
    }
    Ok(acc)
}

/// Expands `f` over ordered star monomials; exact inverse of [`inverse_weyl`].
pub fn weyl_normal_form(f: &PolyExpr, theta: &ThetaMatrix) -> Result<StarPolyCoeffs, CoreError> {
    if theta.dim() != f.nvars() {
        return Err(CoreError::DimensionMismatch {
            expected: f.nvars(),
            got: theta.dim(),
        });
    }
    let mut coeffs = StarPolyCoeffs::zero(f.nvars());
    let mut rest = f.clone();
    while !rest.is_zero() {
        let top = rest.degree();
        // peel every term of the current leading degree at once
        let leading: Vec<(MultiIndex, Scalar)> = rest
            .terms()
            .filter(|(e, _)| e.degree() == top)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        for (e, c) in leading {
            let sm = star_monomial(&e, theta)?;
            rest = &rest - &sm.scale(&c);
            coeffs.insert(e, c);
        }
    }
    Ok(coeffs)
}

/// Evaluates star-monomial coefficients back to an ordinary polynomial.
pub fn inverse_weyl(c: &StarPolyCoeffs, theta: &ThetaMatrix) -> Result<PolyExpr, CoreError> {
    if theta.dim() != c.nvars() {
        return Err(CoreError::DimensionMismatch {
            expected: c.nvars(),
            got: theta.dim(),
        });
    }
    let mut out = PolyExpr::zero(c.nvars());
    for (e, coeff) in c.coeffs() {
        let sm = star_monomial(e, theta)?;
        out = &out + &sm.scale(coeff);
    }
    Ok(out)
}
