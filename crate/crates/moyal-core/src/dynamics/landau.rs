//! The deformed Landau problem in two dimensions.
//!
//! Symmetric gauge, covariant derivative `D_a = d_a + i b eps^{ab} (x^b *)`,
//! deformation `theta^{ab} = theta eps^{ab}`. Star-composing `-s D_a D_a`
//! (with `s` the overall scale) collapses to the closed form
//!
//! ```text
//! s [ -(1 + b theta / 2)^2 Lap + b^2 x^2 - 2 b (1 + b theta / 2) l ]
//! ```
//!
//! with `l = -i eps^{ab} x^a d_b` the angular momentum, and the identity is
//! checked exactly in rational arithmetic. The spectrum is computed in a
//! two-dimensional oscillator basis with length scale matched to `b` alone
//! (independent of `theta`); the operator conserves `l`, so the matrix is
//! block tridiagonal over angular-momentum sectors.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::DynamicsError;
use crate::multi_index::MultiIndex;
use crate::op::{DiffOperator, StarOperator};
use crate::poly::PolyExpr;
use crate::scalar::Scalar;
use crate::theta::ThetaMatrix;

/// Parameters of the deformed Landau problem.
#[derive(Clone, Debug, PartialEq)]
pub struct LandauParams {
    b: BigRational,
    theta: BigRational,
    scale: BigRational,
}

impl LandauParams {
    /// `b` is the magnetic parameter, `theta` the deformation, `scale` the
    /// overall energy scale (defaults to one). The combination
    /// `1 + b theta / 2 = 0` makes the deformation singular and is rejected.
    pub fn new(b: BigRational, theta: BigRational, scale: BigRational) -> Result<Self, DynamicsError> {
        let p = LandauParams { b, theta, scale };
        if p.kappa().is_zero() {
            return Err(DynamicsError::SingularDeformation);
        }
        Ok(p)
    }

    pub fn from_ints(b: (i64, i64), theta: (i64, i64)) -> Result<Self, DynamicsError> {
        LandauParams::new(
            BigRational::new(b.0.into(), b.1.into()),
            BigRational::new(theta.0.into(), theta.1.into()),
            BigRational::one(),
        )
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    /// The rescaling factor `1 + b theta / 2`.
    pub fn kappa(&self) -> BigRational {
        BigRational::one() + &self.b * &self.theta / BigRational::from_integer(2.into())
    }

    pub fn theta_matrix(&self) -> ThetaMatrix {
        ThetaMatrix::scalar_2d(self.theta.clone())
    }
}

/// Built and closed-form operators together with their difference and a
/// sample of the low spectrum.
pub struct HamiltonianReport {
    pub built: StarOperator,
    pub closed_form: StarOperator,
    pub difference: StarOperator,
    pub spectrum: Vec<SpectrumLevel>,
}

/// One converged eigenvalue cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumLevel {
    pub value: f64,
    pub multiplicity: usize,
    pub converged: bool,
}

/// The covariant derivative `D_a` as a star operator on two variables.
pub fn landau_connection(params: &LandauParams, axis: usize) -> StarOperator {
    let nvars = 2;
    let mut d = StarOperator::partial(nvars, axis);
    // + i b eps^{a b} x^b: eps^{12} = +1
    let (other, sign) = if axis == 0 { (1, 1) } else { (0, -1) };
    let coeff = Scalar::from_imag(&self_rat(sign) * &params.b);
    d.add_term(
        MultiIndex::zero(nvars),
        PolyExpr::coordinate(nvars, other).scale(&coeff),
    );
    d
}

fn self_rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Star-composes `-s D_a D_a` on the single-particle algebra.
pub fn build_landau_star(params: &LandauParams) -> Result<StarOperator, DynamicsError> {
    let theta = params.theta_matrix();
    let mut total = StarOperator::zero(2);
    for axis in 0..2 {
        let d = landau_connection(params, axis);
        total = total.add(&d.compose(&d, &theta)?);
    }
    Ok(total.scale(&Scalar::from_real(-params.scale.clone())))
}

/// The closed form as an ordinary differential operator.
pub fn landau_closed_form(params: &LandauParams) -> DiffOperator {
    let nvars = 2;
    let s = &params.scale;
    let kappa = params.kappa();
    let mut op = DiffOperator::zero(nvars);
    // -s kappa^2 Lap
    let lap_coeff = Scalar::from_real(-(s * &kappa * &kappa));
    op.add_term(MultiIndex::new(vec![2, 0]), PolyExpr::constant(nvars, lap_coeff.clone()));
    op.add_term(MultiIndex::new(vec![0, 2]), PolyExpr::constant(nvars, lap_coeff));
    // + s b^2 (x1^2 + x2^2)
    let x1 = PolyExpr::coordinate(nvars, 0);
    let x2 = PolyExpr::coordinate(nvars, 1);
    let r2 = &(&x1 * &x1) + &(&x2 * &x2);
    op.add_term(
        MultiIndex::zero(nvars),
        r2.scale(&Scalar::from_real(s * &params.b * &params.b)),
    );
    // - 2 s b kappa l with l = -i (x1 d2 - x2 d1)
    let w = s * &params.b * &kappa * self_rat(2);
    op.add_term(
        MultiIndex::new(vec![0, 1]),
        x1.scale(&Scalar::from_imag(w.clone())),
    );
    op.add_term(
        MultiIndex::new(vec![1, 0]),
        x2.scale(&Scalar::from_imag(-w)),
    );
    op
}

/// Builds the deformed Landau operator, compares it exactly against the
/// closed form, and samples the low spectrum when the parameters allow.
pub fn landau_hamiltonian(params: &LandauParams) -> Result<HamiltonianReport, DynamicsError> {
    let theta = params.theta_matrix();
    let built = build_landau_star(params)?;
    let closed_form = landau_closed_form(params).to_star(&theta)?;
    let difference = built.sub(&closed_form);
    let spectrum = if params.b.to_f64().unwrap() > 0.0 && params.kappa().to_f64().unwrap() > 0.0 {
        landau_spectrum(params, 24)?.levels
    } else {
        Vec::new()
    };
    Ok(HamiltonianReport {
        built,
        closed_form,
        difference,
        spectrum,
    })
}

/// Converged eigenvalues of the deformed Landau operator.
pub struct LandauSpectrum {
    /// Converged eigenvalues sorted ascending, with multiplicity.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues clustered into levels.
    pub levels: Vec<SpectrumLevel>,
    /// Per angular-momentum sector eigenvalues with convergence flags,
    /// ascending in the radial label; the stable way to match spectra
    /// across deformation strengths.
    pub sectors: Vec<SectorSpectrum>,
    /// Total number of basis states used.
    pub basis_size: usize,
}

/// Eigenvalues of one angular-momentum sector.
pub struct SectorSpectrum {
    pub angular_momentum: isize,
    /// `(eigenvalue, converged)` sorted ascending.
    pub eigenvalues: Vec<(f64, bool)>,
}

/// Pairs of converged eigenvalues matched by sector and radial index,
/// ordered by the first spectrum's value; the oracle for scaling checks.
pub fn matched_converged_pairs(a: &LandauSpectrum, b: &LandauSpectrum) -> Vec<(f64, f64)> {
    let mut pairs = Vec::new();
    for sa in &a.sectors {
        if let Some(sb) = b
            .sectors
            .iter()
            .find(|s| s.angular_momentum == sa.angular_momentum)
        {
            for (ea, eb) in sa.eigenvalues.iter().zip(&sb.eigenvalues) {
                if ea.1 && eb.1 {
                    pairs.push((ea.0, eb.0));
                }
            }
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    pairs
}

/// Diagonalizes in the oscillator basis with total quantum number up to
/// `max_quanta`. Convergence of each eigenvalue is declared when doubling
/// the per-sector depth moves it by less than `1e-10` relative.
pub fn landau_spectrum(
    params: &LandauParams,
    max_quanta: usize,
) -> Result<LandauSpectrum, DynamicsError> {
    let b = params.b.to_f64().unwrap();
    let kappa = params.kappa().to_f64().unwrap();
    let s = params.scale.to_f64().unwrap();
    if !(b > 0.0) || !(kappa > 0.0) {
        return Err(DynamicsError::SpectrumDomain);
    }
    let l_max = max_quanta as isize;
    let mut eigenvalues = Vec::new();
    let mut sectors = Vec::new();
    let mut basis_size = 0usize;
    for l in -l_max..=l_max {
        let depth = sector_depth(max_quanta, l);
        if depth == 0 {
            continue;
        }
        basis_size += depth;
        let here = sector_eigenvalues(s, b, kappa, l, depth);
        let deeper = sector_eigenvalues(s, b, kappa, l, depth * 2);
        let mut sector = SectorSpectrum {
            angular_momentum: l,
            eigenvalues: Vec::with_capacity(depth),
        };
        for (idx, &ev) in here.iter().enumerate() {
            let refined = deeper[idx];
            let scale = ev.abs().max(1e-300);
            let converged = (ev - refined).abs() / scale < 1e-10;
            sector.eigenvalues.push((refined, converged));
            eigenvalues.push((refined, converged));
        }
        sectors.push(sector);
    }
    eigenvalues.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let converged: Vec<f64> = eigenvalues
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|(v, _)| *v)
        .collect();
    if converged.is_empty() {
        return Err(DynamicsError::BasisTooSmall);
    }
    // cluster into levels
    let mut levels: Vec<SpectrumLevel> = Vec::new();
    let tol = 1e-8 * converged.last().unwrap().abs().max(1.0);
    for &v in &converged {
        match levels.last_mut() {
            Some(level) if (v - level.value).abs() < tol => level.multiplicity += 1,
            _ => levels.push(SpectrumLevel {
                value: v,
                multiplicity: 1,
                converged: true,
            }),
        }
    }
    Ok(LandauSpectrum {
        eigenvalues: converged,
        levels,
        sectors,
        basis_size,
    })
}

fn sector_depth(max_quanta: usize, l: isize) -> usize {
    let occupied = l.unsigned_abs();
    if occupied > max_quanta {
        return 0;
    }
    (max_quanta - occupied) / 2 + 1
}

/// Eigenvalues of one angular-momentum sector, ascending.
///
/// In circular oscillator coordinates with length `1/sqrt(b)` the operator
/// restricted to the sector `l = n_plus - n_minus` is tridiagonal over the
/// radial label `k = min(n_plus, n_minus)`:
/// diagonal `s b [(kappa^2 + 1)(2k + |l| + 1) - 2 kappa l]`,
/// off-diagonal `s b (1 - kappa^2) sqrt((k + 1)(k + 1 + |l|))`.
fn sector_eigenvalues(s: f64, b: f64, kappa: f64, l: isize, depth: usize) -> Vec<f64> {
    let abs_l = l.unsigned_abs() as f64;
    let mut mat = DMatrix::<f64>::zeros(depth, depth);
    for k in 0..depth {
        let kf = k as f64;
        mat[(k, k)] = s * b * ((kappa * kappa + 1.0) * (2.0 * kf + abs_l + 1.0) - 2.0 * kappa * l as f64);
        if k + 1 < depth {
            let off = s * b * (1.0 - kappa * kappa) * ((kf + 1.0) * (kf + 1.0 + abs_l)).sqrt();
            mat[(k, k + 1)] = off;
            mat[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(mat);
    let mut out: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
