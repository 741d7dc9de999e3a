//! The antisymmetric deformation matrix and its multiparticle extension.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::CoreError;

/// Real antisymmetric deformation matrix with exact rational entries.
///
/// For `n` particles in `m` dimensions the extended matrix carries the same
/// `m x m` block between every pair of particle slots, so coordinates of
/// *different* particles fail to commute by the same amount as coordinates of
/// one particle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl ThetaMatrix {
    /// Builds a matrix from row-major entries, rejecting non-antisymmetric input.
    pub fn new(dim: usize, entries: Vec<BigRational>) -> Result<Self, CoreError> {
        if entries.len() != dim * dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for h in 0..dim {
            for k in 0..=h {
                if entries[h * dim + k] != -entries[k * dim + h].clone() {
                    return Err(CoreError::NotAntisymmetric { row: h, col: k });
                }
            }
        }
        Ok(ThetaMatrix { dim, entries })
    }

    pub fn zero(dim: usize) -> Self {
        ThetaMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    /// The 2x2 matrix `t * eps` with `eps^{12} = +1`.
    pub fn scalar_2d(t: BigRational) -> Self {
        ThetaMatrix {
            dim: 2,
            entries: vec![BigRational::zero(), t.clone(), -t, BigRational::zero()],
        }
    }

    /// Builds from a list of upper-triangular entries `(h, k, value)` with `h < k`.
    pub fn from_upper(dim: usize, upper: &[(usize, usize, BigRational)]) -> Result<Self, CoreError> {
        let mut entries = vec![BigRational::zero(); dim * dim];
        for (h, k, v) in upper {
            if h >= k || *k >= dim {
                return Err(CoreError::DimensionMismatch {
                    expected: dim,
                    got: *k,
                });
            }
            entries[h * dim + k] = v.clone();
            entries[k * dim + h] = -v.clone();
        }
        Ok(ThetaMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, h: usize, k: usize) -> &BigRational {
        &self.entries[h * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Index pairs `(h, k)` with a nonzero entry; drives the sparse star expansion.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for h in 0..self.dim {
            for k in 0..self.dim {
                if !self.get(h, k).is_zero() {
                    out.push((h, k));
                }
            }
        }
        out
    }

    /// The bilinear form `p_a theta^{ab} q_b`, exactly.
    pub fn bilinear(&self, p: &[BigRational], q: &[BigRational]) -> BigRational {
        assert_eq!(p.len(), self.dim);
        assert_eq!(q.len(), self.dim);
        let mut acc = BigRational::zero();
        for (h, k) in self.support() {
            acc += &p[h] * self.get(h, k) * &q[k];
        }
        acc
    }

    /// Matrix-vector product `(theta q)_a = theta^{ab} q_b`.
    pub fn apply(&self, q: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(q.len(), self.dim);
        (0..self.dim)
            .map(|a| {
                let mut acc = BigRational::zero();
                for b in 0..self.dim {
                    acc += self.get(a, b) * &q[b];
                }
                acc
            })
            .collect()
    }

    /// Extends a single-particle matrix to `n` particles: every `(i, j)` block
    /// equals the one-particle matrix, so the cross relations hold for all pairs.
    pub fn multiparticle(&self, particles: usize) -> Result<ThetaMatrix, CoreError> {
        if particles < 1 {
            return Err(CoreError::InvalidParticleCount(particles));
        }
        if particles == 1 {
            return Ok(self.clone());
        }
        let m = self.dim;
        let dim = particles * m;
        let mut entries = vec![BigRational::zero(); dim * dim];
        for pi in 0..particles {
            for pj in 0..particles {
                for a in 0..m {
                    for b in 0..m {
                        entries[(pi * m + a) * dim + (pj * m + b)] = self.get(a, b).clone();
                    }
                }
            }
        }
        Ok(ThetaMatrix { dim, entries })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(|e| e.to_f64().unwrap()).collect()
    }
}
