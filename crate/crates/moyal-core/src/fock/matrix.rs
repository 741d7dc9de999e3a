//! Minimal sparse complex matrices for truncated Fock operators.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Square sparse matrix keyed by `(row, col)`.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SparseMatrix::zero(dim);
        for i in 0..dim {
            m.entries.insert((i, i), Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .get(&(row, col))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn add_entry(&mut self, row: usize, col: usize, v: Complex64) {
        if v.norm_sqr() == 0.0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry((row, col)) {
            Entry::Vacant(slot) => {
                slot.insert(v);
            }
            Entry::Occupied(mut slot) => {
                let sum = *slot.get() + v;
                if sum.norm_sqr() == 0.0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Complex64)> {
        self.entries.iter()
    }

    pub fn scale(&self, s: Complex64) -> SparseMatrix {
        if s.norm_sqr() == 0.0 {
            return SparseMatrix::zero(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|(&k, &v)| (k, v * s)).collect(),
        }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (&(r, c), &v) in &rhs.entries {
            out.add_entry(r, c, v);
        }
        out
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = SparseMatrix::zero(self.dim);
        for (&(i, k), &a) in &self.entries {
            for (&(_, j), &b) in rhs.entries.range((k, 0)..=(k, usize::MAX)) {
                out.add_entry(i, j, a * b);
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.dim);
        for (&(r, c), &v) in &self.entries {
            out.add_entry(c, r, v.conj());
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (&(r, c), &a) in &self.entries {
            out[r] += a * v[c];
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus over entries whose column passes the filter.
    pub fn max_abs_on_columns(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.entries
            .iter()
            .filter(|(&(_, c), _)| keep(c))
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(r, c), &v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, {} nonzero)", self.dim, self.dim, self.nnz())
    }
}
