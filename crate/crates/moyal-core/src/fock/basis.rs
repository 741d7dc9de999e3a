//! Truncated bosonic and fermionic occupation-number bases.

use std::collections::BTreeMap;

use crate::error::FockError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Statistics {
    Bose,
    Fermi,
}

/// Occupation states over a finite mode set, truncated at total particle
/// number `nmax`, in graded-lex order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockBasis {
    statistics: Statistics,
    num_modes: usize,
    nmax: usize,
    states: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl FockBasis {
    pub fn new(statistics: Statistics, num_modes: usize, nmax: usize) -> Result<Self, FockError> {
        if num_modes == 0 {
            return Err(FockError::EmptyModeSet);
        }
        if nmax == 0 {
            return Err(FockError::InvalidTruncation);
        }
        let mut states = Vec::new();
        let mut current = vec![0u32; num_modes];
        collect_states(statistics, &mut current, 0, nmax as u32, &mut states);
        states.sort_by_key(|s| (s.iter().sum::<u32>(), s.clone()));
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(FockBasis {
            statistics,
            num_modes,
            nmax,
            states,
            index,
        })
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &[u32] {
        &self.states[i]
    }

    pub fn index_of(&self, state: &[u32]) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn total_number(&self, i: usize) -> u32 {
        self.states[i].iter().sum()
    }

    /// Index of the vacuum (all occupations zero).
    pub fn vacuum(&self) -> usize {
        self.index_of(&vec![0; self.num_modes]).expect("vacuum present")
    }

    /// Indices of all states with total particle number `n`.
    pub fn sector(&self, n: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.total_number(i) as usize == n)
            .collect()
    }

    /// Count of `n`-particle states.
    pub fn sector_dim(&self, n: usize) -> usize {
        self.sector(n).len()
    }
}

fn collect_states(
    statistics: Statistics,
    current: &mut Vec<u32>,
    mode: usize,
    left: u32,
    out: &mut Vec<Vec<u32>>,
) {
    if mode == current.len() {
        out.push(current.clone());
        return;
    }
    let cap = match statistics {
        Statistics::Bose => left,
        Statistics::Fermi => left.min(1),
    };
    for occ in 0..=cap {
        current[mode] = occ;
        collect_states(statistics, current, mode + 1, left - occ, out);
    }
    current[mode] = 0;
}

/// `C(n, k)` as an exact `usize`; sector-dimension oracle for the tests.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bose_dimensions() {
        let basis = FockBasis::new(Statistics::Bose, 2, 2).unwrap();
        // N = 0: 1 state, N = 1: 2, N = 2: 3
        assert_eq!(basis.dim(), 6);
        assert_eq!(basis.sector_dim(0), 1);
        assert_eq!(basis.sector_dim(1), 2);
        assert_eq!(basis.sector_dim(2), 3);
        assert_eq!(basis.vacuum(), 0);
    }

    #[test]
    fn fermi_dimensions_are_binomials() {
        let basis = FockBasis::new(Statistics::Fermi, 3, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(basis.sector_dim(n), binomial(3, n));
        }
        assert_eq!(basis.dim(), 8);
    }

    #[test]
    fn states_are_graded_and_distinct() {
        let basis = FockBasis::new(Statistics::Bose, 3, 3).unwrap();
        for i in 1..basis.dim() {
            assert!(basis.total_number(i - 1) <= basis.total_number(i));
            assert_ne!(basis.state(i - 1), basis.state(i));
        }
    }

    #[test]
    fn rejects_degenerate_truncations() {
        assert!(FockBasis::new(Statistics::Bose, 0, 2).is_err());
        assert!(FockBasis::new(Statistics::Bose, 2, 0).is_err());
    }
}
