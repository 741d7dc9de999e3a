//! Two-particle decomposition and additivity checks.

use anyhow::Result;
use num_rational::BigRational;
use num_traits::Zero;

use moyal_core::dynamics::{
    build_landau_star, landau_closed_form, n_particle_hamiltonian, two_particle_hamiltonian,
    LandauParams,
};
use moyal_core::op::DiffOperator;
use moyal_core::{PolyExpr, Scalar};

use crate::config::Config;
use crate::report::{Check, CheckBuilder};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn parameter_grid() -> Vec<LandauParams> {
    let bs = [rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1)];
    let thetas = [rat(0, 1), rat(1, 4), rat(1, 3), rat(1, 2), rat(1, 1)];
    let mut grid = Vec::new();
    for b in &bs {
        for t in &thetas {
            grid.push(
                LandauParams::new(b.clone(), t.clone(), BigRational::from_integer(1.into()))
                    .expect("grid avoids the singular line"),
            );
        }
    }
    grid
}

pub fn checks(_config: &Config) -> Result<Vec<Check>> {
    let mut b = CheckBuilder::new();

    b.exact(
        "decomposition-identity",
        "assembled two-particle operator minus singles and the full correction vanishes",
        "two-particle-cross-term",
        || {
            parameter_grid()
                .iter()
                .filter(|p| !two_particle_hamiltonian(p).unwrap().difference.is_zero())
                .count()
        },
    );

    b.exact(
        "cross-term-vanishing",
        "the additivity correction vanishes exactly when b theta = 0 and only then",
        "two-particle-cross-term",
        || {
            parameter_grid()
                .iter()
                .filter(|p| {
                    let report = two_particle_hamiltonian(p).unwrap();
                    let product_zero = (p.b() * p.theta()).is_zero();
                    report.cross_term.is_zero() != product_zero
                })
                .count()
        },
    );

    b.exact(
        "mixed-bracket-residual",
        "dropping the Laplacian renormalization leaves exactly that term as residual",
        "two-particle-cross-term",
        || {
            parameter_grid()
                .iter()
                .filter(|p| {
                    let theta4 = p.theta_matrix().multiparticle(2).unwrap();
                    let report = two_particle_hamiltonian(p).unwrap();
                    let single = landau_closed_form(p);
                    let partial = single
                        .embed(4, 0)
                        .add(&single.embed(4, 2))
                        .add(&report.mixed_part);
                    let residual = report.built.to_pointwise(&theta4).unwrap().sub(&partial);
                    residual != report.laplacian_part
                })
                .count()
        },
    );

    b.exact(
        "two-particle-hermiticity",
        "the assembled two-particle operator is self adjoint on the grid",
        "hamiltonian-hermiticity",
        || {
            parameter_grid()
                .iter()
                .filter(|p| {
                    let theta4 = p.theta_matrix().multiparticle(2).unwrap();
                    let built = two_particle_hamiltonian(p).unwrap().built;
                    built.adjoint(&theta4).unwrap() != built
                })
                .count()
        },
    );

    b.exact(
        "pair-potential-multiplies",
        "difference-coordinate pair potentials star-multiply as plain products",
        "difference-centrality",
        || {
            let p = LandauParams::from_ints((1, 2), (1, 3)).unwrap();
            let theta4 = p.theta_matrix().multiparticle(2).unwrap();
            let xi1 = PolyExpr::coordinate(2, 0);
            let xi2 = PolyExpr::coordinate(2, 1);
            let w = &(&xi1 * &xi1) + &(&xi2 * &xi2);
            let h = build_landau_star(&p).unwrap();
            let with_w = n_particle_hamiltonian(&h, Some(&w), 2, 2).unwrap();
            let without = n_particle_hamiltonian(&h, None, 2, 2).unwrap();
            let w_term = with_w.sub(&without).to_pointwise(&theta4).unwrap();
            // a pure multiplication operator: single zero-derivative term
            let terms: Vec<_> = w_term.terms().collect();
            usize::from(!(terms.len() == 1 && terms[0].0.is_zero()))
        },
    );

    b.exact(
        "free-additivity",
        "three free particles assemble additively for any deformation",
        "invariant-star-triviality",
        || {
            let p = LandauParams::from_ints((0, 1), (1, 2)).unwrap();
            let h = build_landau_star(&p).unwrap();
            let theta6 = p.theta_matrix().multiparticle(3).unwrap();
            let total = n_particle_hamiltonian(&h, None, 3, 2).unwrap();
            let pointwise = total.to_pointwise(&theta6).unwrap();
            let mut expect = DiffOperator::zero(6);
            for var in 0..6 {
                expect.add_term(
                    moyal_core::MultiIndex::unit(6, var).raised(var, 1),
                    PolyExpr::constant(6, Scalar::from_int(-1)),
                );
            }
            usize::from(pointwise != expect)
        },
    );

    b.exact(
        "landau-additivity-fails",
        "the two-particle Landau operator is not additive once b theta is nonzero",
        "additivity-breaking",
        || {
            let p = LandauParams::from_ints((1, 2), (1, 3)).unwrap();
            let report = two_particle_hamiltonian(&p).unwrap();
            usize::from(report.cross_term.is_zero() || report.mixed_part.is_zero())
        },
    );

    Ok(b.finish())
}
