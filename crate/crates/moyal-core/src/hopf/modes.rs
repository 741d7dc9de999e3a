//! Finite plane-wave mode bases with exact rational momenta.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::HopfError;

/// A finite set of distinct momentum vectors `p in Q^m`; the discrete
/// stand-in for the plane-wave eigenbasis of the translations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModeBasis {
    dim: usize,
    momenta: Vec<Vec<BigRational>>,
}

impl ModeBasis {
    pub fn new(dim: usize, momenta: Vec<Vec<BigRational>>) -> Result<Self, HopfError> {
        if momenta.is_empty() {
            return Err(HopfError::EmptyModeSet);
        }
        for p in &momenta {
            if p.len() != dim {
                return Err(HopfError::ModeDimension {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        for i in 0..momenta.len() {
            for j in (i + 1)..momenta.len() {
                if momenta[i] == momenta[j] {
                    return Err(HopfError::DuplicateMode);
                }
            }
        }
        Ok(ModeBasis { dim, momenta })
    }

    /// Integer-momentum helper for tests and defaults.
    pub fn from_ints(dim: usize, momenta: &[&[i64]]) -> Result<Self, HopfError> {
        let momenta = momenta
            .iter()
            .map(|p| p.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        ModeBasis::new(dim, momenta)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.momenta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.momenta.is_empty()
    }

    pub fn momentum(&self, i: usize) -> &[BigRational] {
        &self.momenta[i]
    }

    pub fn momenta(&self) -> &[Vec<BigRational>] {
        &self.momenta
    }

    pub fn momentum_f64(&self, i: usize) -> Vec<f64> {
        self.momenta[i].iter().map(|x| x.to_f64().unwrap()).collect()
    }
}

pub fn add_momenta(p: &[BigRational], q: &[BigRational]) -> Vec<BigRational> {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

pub fn neg_momentum(p: &[BigRational]) -> Vec<BigRational> {
    p.iter().map(|a| -a.clone()).collect()
}
