//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("particle count must be >= 1, got {0}")]
    InvalidParticleCount(usize),
    #[error("variable count mismatch: {lhs} vs {rhs}")]
    VariableMismatch { lhs: usize, rhs: usize },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum HopfError {
    #[error("iterated coproduct needs n >= 2, got {0}")]
    CoproductOrder(usize),
    #[error("mode set is empty")]
    EmptyModeSet,
    #[error("mode vectors must share dimension {expected}, got {got}")]
    ModeDimension { expected: usize, got: usize },
    #[error("duplicate momentum vector in mode set")]
    DuplicateMode,
    #[error("adjoint series did not terminate within {0} steps")]
    NonTerminatingSeries(usize),
    #[error("permutation of degree {got} does not act on {expected} tensor factors")]
    PermutationDegree { expected: usize, got: usize },
    #[error("invalid permutation image list")]
    InvalidPermutation,
    #[error("generator index out of range for dimension {dim}: ({a}, {b})")]
    GeneratorRange { dim: usize, a: usize, b: usize },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum FockError {
    #[error("mode set is empty")]
    EmptyModeSet,
    #[error("maximum particle number must be >= 1")]
    InvalidTruncation,
    #[error("operators act on different bases")]
    BasisMismatch,
    #[error("sector {n} exceeds the truncation Nmax = {nmax}")]
    SectorOutOfRange { n: usize, nmax: usize },
    #[error("one-particle matrix must be {expected}x{expected}, got {got} entries")]
    GeneratorShape { expected: usize, got: usize },
    #[error("field terms carry different operator momenta; cannot merge")]
    MomentumMismatch,
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GridError {
    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("box half-width must be positive, got {0}")]
    InvalidBox(f64),
    #[error("only dimensions 1 and 2 are supported, got {0}")]
    UnsupportedDimension(usize),
    #[error("grid specs differ")]
    SpecMismatch,
    #[error("deformation matrix is {got}x{got}, grid needs {expected}x{expected}")]
    ThetaDimension { expected: usize, got: usize },
    #[error("spectral mass at the Nyquist boundary is {ratio:.3e} of the peak; grid is too coarse")]
    Aliasing { ratio: f64 },
    #[error("unsupported sample descriptor: {0}")]
    UnsupportedDescriptor(String),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("deformation is singular: 1 + b*theta/2 = 0")]
    SingularDeformation,
    #[error("spectrum needs b > 0 and 1 + b*theta/2 > 0")]
    SpectrumDomain,
    #[error("oscillator basis too small: no converged eigenvalues")]
    BasisTooSmall,
    #[error("pair potential must be a polynomial in {expected} difference variables, got {got}")]
    PairPotentialShape { expected: usize, got: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Fock(#[from] FockError),
}
