//! Twisted CCR checks on Fock truncations, sector counting, the field
//! algebra and the sector-restriction identity.

use std::collections::BTreeMap;

use anyhow::Result;
use num_complex::Complex64;
use num_rational::BigRational;

use moyal_core::dynamics::fock_restriction_residual;
use moyal_core::fock::{
    discrete_delta, dressed_sector_rank, expected_sector_dim, star_bracket, twisted_ccr_residual,
    CcrAlgebra, FieldElement, Statistics,
};
use moyal_core::hopf::modes::{neg_momentum, ModeBasis};
use moyal_core::ThetaMatrix;

use crate::config::Config;
use crate::report::{Check, CheckBuilder};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn theta_values() -> Vec<BigRational> {
    vec![rat(0, 1), rat(1, 5), rat(1, 2), rat(1, 1), rat(3, 1)]
}

fn mode_sets() -> Vec<ModeBasis> {
    vec![
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap(),
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap(),
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, -1]]).unwrap(),
    ]
}

fn exchange_sign(stats: Statistics) -> f64 {
    match stats {
        Statistics::Bose => 1.0,
        Statistics::Fermi => -1.0,
    }
}

pub fn checks(config: &Config) -> Result<Vec<Check>> {
    let tol = config.tolerance_for("fock", 1e-12);
    let mut b = CheckBuilder::new();

    b.residual(
        "undeformed-ccr",
        "canonical (anti)commutation relations hold below the truncation edge",
        "ccr",
        tol,
        || {
            let mut worst: f64 = 0.0;
            for modes in mode_sets() {
                for stats in [Statistics::Bose, Statistics::Fermi] {
                    let alg = CcrAlgebra::build(&modes, stats, 4).unwrap();
                    let check = alg.verify_ccr();
                    worst = worst.max(check.interior_residual);
                    // bosonic truncation must flag the broken top sector
                    if stats == Statistics::Bose && !check.top_sector_truncated {
                        worst = worst.max(1.0);
                    }
                }
            }
            worst
        },
    );

    b.residual(
        "twisted-ccr",
        "dressed operators satisfy all three twisted relation families (2-4 modes, 5 deformations)",
        "twisted-ccr",
        tol,
        || {
            let mut worst: f64 = 0.0;
            for modes in mode_sets() {
                for stats in [Statistics::Bose, Statistics::Fermi] {
                    let nmax = 4usize;
                    let alg = CcrAlgebra::build(&modes, stats, nmax).unwrap();
                    for t in theta_values() {
                        let theta = ThetaMatrix::scalar_2d(t.clone());
                        let dressed = alg.dress(&theta).unwrap();
                        worst =
                            worst.max(twisted_ccr_residual(&alg, &dressed, &theta).unwrap());
                    }
                }
            }
            worst
        },
    );

    b.residual(
        "dressing-unitarity",
        "dressed creation and annihilation operators are mutual adjoints; vacuum is annihilated",
        "dressing",
        tol,
        || {
            let mut worst: f64 = 0.0;
            for stats in [Statistics::Bose, Statistics::Fermi] {
                let modes = &mode_sets()[1];
                let alg = CcrAlgebra::build(modes, stats, 3).unwrap();
                let theta = ThetaMatrix::scalar_2d(rat(1, 2));
                let dressed = alg.dress(&theta).unwrap();
                let mut vacuum = vec![Complex64::new(0.0, 0.0); alg.basis.dim()];
                vacuum[alg.basis.vacuum()] = Complex64::new(1.0, 0.0);
                for p in 0..modes.len() {
                    worst = worst
                        .max(dressed.create[p].adjoint().sub(&dressed.annihilate[p]).max_abs());
                    let hit = dressed.annihilate[p].apply(&vacuum);
                    worst = worst.max(hit.iter().map(|c| c.norm()).fold(0.0, f64::max));
                }
            }
            worst
        },
    );

    b.exact(
        "sector-dimensions",
        "n-particle sector ranks equal the undeformed binomial counts for every deformation",
        "statistics-compatibility",
        || {
            let mut violations = 0;
            let modes = &mode_sets()[1];
            for stats in [Statistics::Bose, Statistics::Fermi] {
                let alg = CcrAlgebra::build(modes, stats, 3).unwrap();
                for t in theta_values() {
                    let theta = ThetaMatrix::scalar_2d(t.clone());
                    let dressed = alg.dress(&theta).unwrap();
                    for n in 0..=3usize {
                        let rank = dressed_sector_rank(&alg, &dressed, n).unwrap();
                        if rank != expected_sector_dim(stats, modes.len(), n) {
                            violations += 1;
                        }
                    }
                }
            }
            violations
        },
    );

    b.residual(
        "field-exchange",
        "field brackets: [phi, phi] vanishes and [phi, phi*] is the discrete delta",
        "field-ccr",
        tol,
        || {
            let mut worst: f64 = 0.0;
            let modes = &mode_sets()[1];
            let theta = ThetaMatrix::scalar_2d(rat(1, 2));
            for stats in [Statistics::Bose, Statistics::Fermi] {
                let alg = CcrAlgebra::build(modes, stats, 3).unwrap();
                let nmax = alg.basis.nmax() as u32;
                let phi_x = FieldElement::annihilation_field(&alg, 0);
                let phi_y = FieldElement::annihilation_field(&alg, 1);
                let sign = exchange_sign(stats);
                worst = worst.max(
                    star_bracket(&phi_x, &phi_y, &theta, sign)
                        .unwrap()
                        .max_abs(),
                );
                let phi_star_y = FieldElement::creation_field(&alg, 1);
                let bracket = star_bracket(&phi_x, &phi_star_y, &theta, sign).unwrap();
                let delta = discrete_delta(&alg.modes, alg.basis.dim(), 0, 1);
                let basis = &alg.basis;
                worst = worst.max(
                    bracket
                        .sub(&delta)
                        .max_abs_on_columns(|col| basis.total_number(col) < nmax),
                );
            }
            worst
        },
    );

    b.residual(
        "field-invariance",
        "the total field star-multiplies as a plain product against a spanning operator set",
        "field-invariance",
        tol,
        || {
            let modes = &mode_sets()[1];
            let theta = ThetaMatrix::scalar_2d(rat(1, 2));
            let alg = CcrAlgebra::build(modes, Statistics::Bose, 3).unwrap();
            let phi = FieldElement::annihilation_field(&alg, 0);
            let mut witnesses: Vec<FieldElement> = Vec::new();
            for p in 0..modes.len() {
                witnesses.push(FieldElement::from_operator(
                    2,
                    alg.create[p].clone(),
                    modes.momentum(p).to_vec(),
                ));
                witnesses.push(FieldElement::from_operator(
                    2,
                    alg.annihilate[p].clone(),
                    neg_momentum(modes.momentum(p)),
                ));
                witnesses.push(FieldElement::from_operator(
                    2,
                    alg.create[p].mul(&alg.annihilate[p]),
                    vec![rat(0, 1), rat(0, 1)],
                ));
            }
            let mut worst: f64 = 0.0;
            // compare both at the level of coefficients and at sample points
            let mut points = BTreeMap::new();
            points.insert(0usize, vec![0.3, -0.7]);
            points.insert(1usize, vec![-1.1, 0.4]);
            for w in &witnesses {
                let star = phi.star(w, &theta).unwrap();
                let plain = phi.mul(w);
                worst = worst.max(star.sub(&plain).max_abs());
                let diff_eval = star
                    .evaluate(&points)
                    .sub(&plain.evaluate(&points))
                    .max_abs();
                worst = worst.max(diff_eval);
                let star_r = w.star(&phi, &theta).unwrap();
                worst = worst.max(star_r.sub(&w.mul(&phi)).max_abs());
            }
            worst
        },
    );

    b.residual(
        "number-operator",
        "the star-built number operator equals the plain matrix sum",
        "invariant-star-triviality",
        tol,
        || {
            let modes = &mode_sets()[1];
            let theta = ThetaMatrix::scalar_2d(rat(2, 3));
            let alg = CcrAlgebra::build(modes, Statistics::Bose, 3).unwrap();
            let mut star_number = FieldElement::zero(2, alg.basis.dim());
            let mut plain = moyal_core::fock::SparseMatrix::zero(alg.basis.dim());
            for p in 0..modes.len() {
                let cre = FieldElement::from_operator(
                    2,
                    alg.create[p].clone(),
                    modes.momentum(p).to_vec(),
                );
                let ann = FieldElement::from_operator(
                    2,
                    alg.annihilate[p].clone(),
                    neg_momentum(modes.momentum(p)),
                );
                star_number = star_number.add(&cre.star(&ann, &theta).unwrap());
                plain = plain.add(&alg.create[p].mul(&alg.annihilate[p]));
            }
            let as_field = FieldElement::from_operator(2, plain, vec![rat(0, 1), rat(0, 1)]);
            star_number.sub(&as_field).max_abs()
        },
    );

    b.residual(
        "fock-restriction",
        "the free Fock Hamiltonian restricted to n <= 2 equals the direct operator",
        "sector-restriction",
        tol,
        || {
            let modes = &mode_sets()[1];
            let theta = ThetaMatrix::scalar_2d(rat(1, 2));
            let mut worst: f64 = 0.0;
            for stats in [Statistics::Bose, Statistics::Fermi] {
                for n in 1..=2usize {
                    worst = worst
                        .max(fock_restriction_residual(modes, stats, 3, n, &theta).unwrap());
                }
            }
            worst
        },
    );

    Ok(b.finish())
}
