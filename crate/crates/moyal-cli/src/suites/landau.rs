//! Deformed Landau identity and spectrum checks.

use std::io::Write;

use anyhow::{Context, Result};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use moyal_core::dynamics::{
    landau_hamiltonian, landau_spectrum, matched_converged_pairs, LandauParams,
};

use crate::config::Config;
use crate::report::{Check, CheckBuilder};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// The rational 5x5 parameter grid, including the zero edges.
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

pub fn checks(config: &Config) -> Result<Vec<Check>> {
    let mut b = CheckBuilder::new();

    b.exact(
        "closed-form-identity",
        "built minus closed-form operator vanishes on the 5x5 (b, theta) grid",
        "landau-closed-form",
        || {
            parameter_grid()
                .iter()
                .filter(|p| {
                    let report = landau_hamiltonian(p).unwrap();
                    !report.difference.is_zero()
                })
                .count()
        },
    );

    b.exact(
        "hermiticity",
        "the built operator equals its formal adjoint on the whole grid",
        "landau-hermiticity",
        || {
            parameter_grid()
                .iter()
                .filter(|p| {
                    let theta = p.theta_matrix();
                    let built = moyal_core::dynamics::build_landau_star(p).unwrap();
                    built.adjoint(&theta).unwrap() != built
                })
                .count()
        },
    );

    {
        let tol = config.tolerance_for("landau", 1e-8);
        let out_dir = config.output_dir.clone();
        b.residual(
            "spectrum-scaling",
            "deformed eigenvalues are (1 + b theta / 2) times matched undeformed ones",
            "landau-spectrum",
            tol,
            move || {
                let max_quanta = 40; // 861 basis states, well under the 60^2 budget
                let reference = LandauParams::from_ints((1, 1), (0, 1)).unwrap();
                let base = landau_spectrum(&reference, max_quanta).unwrap();
                let mut worst: f64 = 0.0;
                for theta in [rat(1, 4), rat(1, 2)] {
                    let params = LandauParams::new(
                        rat(1, 1),
                        theta,
                        BigRational::from_integer(1.into()),
                    )
                    .unwrap();
                    let kappa = params.kappa().to_f64().unwrap();
                    let deformed = landau_spectrum(&params, max_quanta).unwrap();
                    let pairs = matched_converged_pairs(&base, &deformed);
                    if pairs.len() < 10 {
                        return 1.0;
                    }
                    for (undeformed, got) in pairs.iter().take(10) {
                        let expect = kappa * undeformed;
                        worst = worst.max(((got - expect) / expect).abs());
                    }
                    if let Some(dir) = &out_dir {
                        let _ = export_spectrum(dir, &params, &deformed);
                    }
                }
                worst
            },
        );
    }

    b.exact(
        "degeneracy-growth",
        "the multiplicity of the lowest level grows with the basis size",
        "landau-spectrum",
        || {
            let p = LandauParams::from_ints((1, 1), (1, 4)).unwrap();
            let small = landau_spectrum(&p, 12).unwrap();
            let large = landau_spectrum(&p, 24).unwrap();
            usize::from(large.levels[0].multiplicity <= small.levels[0].multiplicity)
        },
    );

    Ok(b.finish())
}

/// Spectrum table as CSV: index, eigenvalue, multiplicity, convergence flag.
fn export_spectrum(
    dir: &std::path::Path,
    params: &LandauParams,
    spectrum: &moyal_core::dynamics::LandauSpectrum,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let name = format!(
        "landau-spectrum-b{}-theta{}.csv",
        params.b(),
        params.theta().to_string().replace('/', "over")
    );
    let mut file = std::fs::File::create(dir.join(name)).context("writing spectrum table")?;
    writeln!(file, "index,eigenvalue,multiplicity,converged")?;
    let mut index = 0usize;
    for level in &spectrum.levels {
        writeln!(
            file,
            "{},{},{},{}",
            index, level.value, level.multiplicity, level.converged
        )?;
        index += level.multiplicity;
    }
    Ok(())
}
