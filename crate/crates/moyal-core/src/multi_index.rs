//! Exponent multi-indices shared by polynomials and differential operators.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::One;

/// A multi-index `(e_1, ..., e_n)` over a fixed variable set.
///
/// Ordering is graded lexicographic, which fixes the canonical term order
/// used for structural equality of polynomials and operators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// The unit index with a single `1` at `var`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.nvars(), other.nvars());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn raised(&self, var: usize, by: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[var] += by;
        MultiIndex(e)
    }

    pub fn lowered(&self, var: usize) -> Option<MultiIndex> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[var] -= 1;
        Some(MultiIndex(e))
    }

    /// Scatters this index into a wider variable set starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MultiIndex {
        assert!(offset + self.nvars() <= nvars);
        let mut e = vec![0; nvars];
        e[offset..offset + self.nvars()].copy_from_slice(&self.0);
        MultiIndex(e)
    }

    /// Componentwise product of binomial coefficients `C(self_k, sub_k)`.
    pub fn binomial(&self, sub: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (&n, &k) in self.0.iter().zip(&sub.0) {
            acc *= binomial_u32(n, k);
        }
        acc
    }

    /// Componentwise factorial product `prod_k (e_k)!`.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            acc *= factorial_u32(e);
        }
        acc
    }

    /// All multi-indices `g <= self` (componentwise), in graded-lex order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.nvars())];
        for (var, &e) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                for k in 0..=e {
                    next.push(base.raised(var, k));
                }
            }
            out = next;
        }
        out
    }
}

pub fn factorial_u32(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn binomial_u32(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Index<usize> for MultiIndex {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Enumerates all multi-indices in `nvars` variables with total degree `<= max_degree`.
pub fn indices_up_to_degree(nvars: usize, max_degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == current.len() {
            out.push(MultiIndex::new(current.clone()));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, max_degree);
    out.sort();
    out
}
