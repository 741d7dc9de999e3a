//! Acceptance suite: every criterion below pins its tolerance and runtime
//! budget and prints one pass/fail line. Exact criteria compare structures
//! in rational arithmetic; numeric criteria compare residuals.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use moyal_core::dynamics::{
    fock_restriction_residual, landau_hamiltonian, landau_spectrum, matched_converged_pairs,
    two_particle_hamiltonian, LandauParams,
};
use moyal_core::fock::{
    dressed_sector_rank, expected_sector_dim, twisted_ccr_residual, CcrAlgebra, Statistics,
};
use moyal_core::grid::{grid_integral, grid_star, sample, GridFunction, GridSpec, SampleExpr};
use moyal_core::hopf::{
    cocycle_residual, coproduct_iter, r_matrix, twisted_coproduct, twisted_permutation,
    Generator, ModeBasis, Permutation, TensorUEA, UEAElement,
};
use moyal_core::hopf::perm::max_abs;
use moyal_core::multi_index::indices_up_to_degree;
use moyal_core::weyl::{inverse_weyl, weyl_normal_form};
use moyal_core::{moyal_star, star_commutator, PolyExpr, Scalar, ThetaMatrix};

use moyal_cli::suites::poly_gaussian_star_reference;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget_secs: u64) -> Self {
        Criterion {
            name,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
        }
    }

    fn finish(self, pass: bool, detail: &str) {
        let elapsed = self.started.elapsed();
        let within = elapsed <= self.budget;
        println!(
            "criterion {}: {} ({detail}; runtime {:.2}s of {:.0}s budget)",
            self.name,
            if pass && within { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            self.budget.as_secs_f64(),
        );
        assert!(pass, "criterion {} failed: {detail}", self.name);
        assert!(
            within,
            "criterion {} exceeded its runtime budget: {:.2}s",
            self.name,
            elapsed.as_secs_f64()
        );
    }
}

#[test]
fn criterion_01_exact_coordinate_algebra() {
    let c = Criterion::start("1 exact coordinate algebra", 1);
    let mut violations = 0usize;
    for m in 2..=3usize {
        let theta = match m {
            2 => ThetaMatrix::scalar_2d(rat(2, 7)),
            _ => ThetaMatrix::from_upper(
                3,
                &[(0, 1, rat(2, 7)), (0, 2, rat(-1, 4)), (1, 2, rat(3, 5))],
            )
            .unwrap(),
        };
        for n in 1..=3usize {
            let big = theta.multiparticle(n).unwrap();
            let nv = n * m;
            for i in 0..nv {
                for j in 0..nv {
                    let comm = star_commutator(
                        &PolyExpr::coordinate(nv, i),
                        &PolyExpr::coordinate(nv, j),
                        &big,
                    )
                    .unwrap();
                    let expect = PolyExpr::constant(
                        nv,
                        &Scalar::i() * &Scalar::from_real(big.get(i, j).clone()),
                    );
                    if comm != expect {
                        violations += 1;
                    }
                }
            }
        }
    }
    c.finish(violations == 0, &format!("{violations} violations"));
}

#[test]
fn criterion_02_associativity_and_weyl_roundtrip() {
    let c = Criterion::start("2 associativity and Weyl roundtrip", 30);
    let theta2 = ThetaMatrix::scalar_2d(rat(1, 3));
    let mut violations = 0usize;

    // exhaustive monomial triples, each of total degree <= 4 in 2 variables
    let monos: Vec<PolyExpr> = indices_up_to_degree(2, 4)
        .into_iter()
        .map(|e| PolyExpr::monomial(2, e, Scalar::one()))
        .collect();
    for a in &monos {
        for b in &monos {
            for d in &monos {
                let left = moyal_star(&moyal_star(a, b, &theta2).unwrap(), d, &theta2).unwrap();
                let right = moyal_star(a, &moyal_star(b, d, &theta2).unwrap(), &theta2).unwrap();
                if left != right {
                    violations += 1;
                }
            }
        }
    }

    // 200 seeded random triples of degree <= 6
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..200 {
        let (nvars, theta) = if trial % 2 == 0 {
            (2usize, theta2.clone())
        } else {
            (
                4usize,
                ThetaMatrix::from_upper(
                    4,
                    &[(0, 1, rat(1, 2)), (2, 3, rat(1, 2)), (1, 2, rat(2, 7))],
                )
                .unwrap(),
            )
        };
        let mut gen_poly = || random_poly(&mut rng, nvars, 6, 5);
        let a = gen_poly();
        let b = gen_poly();
        let d = gen_poly();
        let left = moyal_star(&moyal_star(&a, &b, &theta).unwrap(), &d, &theta).unwrap();
        let right = moyal_star(&a, &moyal_star(&b, &d, &theta).unwrap(), &theta).unwrap();
        if left != right {
            violations += 1;
        }
        // Weyl round trip on one of the factors
        let back = inverse_weyl(&weyl_normal_form(&a, &theta).unwrap(), &theta).unwrap();
        if back != a {
            violations += 1;
        }
    }
    c.finish(violations == 0, &format!("{violations} violations"));
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32, terms: usize) -> PolyExpr {
    use rand::Rng;
    let mut p = PolyExpr::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let mut left = rng.random_range(0..=max_degree);
        for e in exps.iter_mut() {
            let take = rng.random_range(0..=left);
            *e = take;
            left -= take;
            if left == 0 {
                break;
            }
        }
        let num = rng.random_range(-9..=9i64);
        let den = rng.random_range(1..=4i64);
        let im = rng.random_range(-9..=9i64);
        p.add_term(
            moyal_core::MultiIndex::new(exps),
            Scalar::new(rat(num, den), rat(im, den)),
        );
    }
    p
}

fn landau_grid() -> Vec<LandauParams> {
    let bs = [rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1)];
    let ts = [rat(0, 1), rat(1, 4), rat(1, 3), rat(1, 2), rat(1, 1)];
    bs.iter()
        .flat_map(|b| {
            ts.iter().map(move |t| {
                LandauParams::new(b.clone(), t.clone(), BigRational::from_integer(1.into()))
                    .unwrap()
            })
        })
        .collect()
}

#[test]
fn criterion_03_landau_closed_form() {
    let c = Criterion::start("3 deformed Landau identity", 5);
    let bad = landau_grid()
        .iter()
        .filter(|p| !landau_hamiltonian(p).unwrap().difference.is_zero())
        .count();
    c.finish(bad == 0, &format!("{bad} grid points with nonzero difference"));
}

#[test]
fn criterion_04_two_particle_cross_term() {
    let c = Criterion::start("4 two-particle cross term", 10);
    let mut bad = 0usize;
    for p in landau_grid() {
        let report = two_particle_hamiltonian(&p).unwrap();
        // assembled operator minus singles and the cross term, exactly zero
        if !report.difference.is_zero() {
            bad += 1;
        }
        // cross term vanishes iff b theta = 0
        if report.cross_term.is_zero() != (p.b() * p.theta()).is_zero() {
            bad += 1;
        }
        // the mixed bracket alone leaves exactly the Laplacian
        // renormalization as residual
        let theta4 = p.theta_matrix().multiparticle(2).unwrap();
        let single = moyal_core::dynamics::landau_closed_form(&p);
        let partial = single
            .embed(4, 0)
            .add(&single.embed(4, 2))
            .add(&report.mixed_part);
        if report.built.to_pointwise(&theta4).unwrap().sub(&partial) != report.laplacian_part {
            bad += 1;
        }
    }
    c.finish(bad == 0, &format!("{bad} grid violations"));
}

#[test]
fn criterion_05_landau_spectrum_scaling() {
    let c = Criterion::start("5 Landau spectrum scaling", 60);
    let max_quanta = 40; // 861 oscillator states, under the 60^2 cap
    let base = landau_spectrum(
        &LandauParams::from_ints((1, 1), (0, 1)).unwrap(),
        max_quanta,
    )
    .unwrap();
    assert!(base.basis_size <= 3600);
    let mut worst: f64 = 0.0;
    let mut enough = true;
    for theta in [rat(1, 4), rat(1, 2)] {
        let params =
            LandauParams::new(rat(1, 1), theta, BigRational::from_integer(1.into())).unwrap();
        let kappa = params.kappa().to_f64().unwrap();
        let deformed = landau_spectrum(&params, max_quanta).unwrap();
        let pairs = matched_converged_pairs(&base, &deformed);
        enough &= pairs.len() >= 10;
        for (undeformed, got) in pairs.iter().take(10) {
            worst = worst.max(((got - kappa * undeformed) / (kappa * undeformed)).abs());
        }
    }
    c.finish(
        enough && worst < 1e-8,
        &format!("worst relative mismatch {worst:.3e}"),
    );
}

#[test]
fn criterion_06_twisted_ccr() {
    let c = Criterion::start("6 twisted CCR on truncations", 30);
    let mode_sets = [
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap(),
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap(),
        ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, -1]]).unwrap(),
    ];
    let thetas = [rat(0, 1), rat(1, 5), rat(1, 2), rat(1, 1), rat(3, 1)];
    let mut worst: f64 = 0.0;
    for modes in &mode_sets {
        for stats in [Statistics::Bose, Statistics::Fermi] {
            let algebra = CcrAlgebra::build(modes, stats, 4).unwrap();
            for t in &thetas {
                let theta = ThetaMatrix::scalar_2d(t.clone());
                let dressed = algebra.dress(&theta).unwrap();
                worst = worst.max(twisted_ccr_residual(&algebra, &dressed, &theta).unwrap());
            }
        }
    }
    c.finish(worst < 1e-12, &format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_07_statistics_compatibility() {
    let c = Criterion::start("7 statistics compatibility", 5);
    let modes = ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let mut bad = 0usize;
    for stats in [Statistics::Bose, Statistics::Fermi] {
        let algebra = CcrAlgebra::build(&modes, stats, 3).unwrap();
        for t in [rat(0, 1), rat(1, 2), rat(3, 1)] {
            let dressed = algebra.dress(&ThetaMatrix::scalar_2d(t.clone())).unwrap();
            for n in 0..=3usize {
                if dressed_sector_rank(&algebra, &dressed, n).unwrap()
                    != expected_sector_dim(stats, 3, n)
                {
                    bad += 1;
                }
            }
        }
    }
    c.finish(bad == 0, &format!("{bad} sector-count mismatches"));
}

#[test]
fn criterion_08_cocycle_and_braiding() {
    let c = Criterion::start("8 cocycle and braiding", 5);
    let modes = ModeBasis::new(
        2,
        vec![
            vec![rat(1, 2), rat(-1, 3)],
            vec![rat(0, 1), rat(2, 5)],
            vec![rat(-3, 4), rat(1, 7)],
        ],
    )
    .unwrap();
    let theta = ThetaMatrix::scalar_2d(rat(3, 7));
    let mut worst = cocycle_residual(&modes, &theta).unwrap();

    let r = r_matrix(&modes, &theta).unwrap();
    for t in r.tuples() {
        let phase = r.phase(&t);
        worst = worst.max((phase.norm() - 1.0).abs());
        worst = worst.max((phase * r.phase(&[t[1], t[0]]) - Complex64::new(1.0, 0.0)).norm());
    }

    let taus = Permutation::all(3);
    for a in &taus {
        for b in &taus {
            let pa = twisted_permutation(a, &modes, &theta).unwrap();
            let pb = twisted_permutation(b, &modes, &theta).unwrap();
            let direct = twisted_permutation(&a.compose(b), &modes, &theta).unwrap();
            worst = worst.max(max_abs(&(pa * pb - direct)));
        }
    }
    c.finish(worst < 1e-12, &format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_09_deformed_coproduct() {
    let c = Criterion::start("9 deformed coproduct", 5);
    let dim = 3;
    let theta = ThetaMatrix::from_upper(dim, &[(0, 1, rat(1, 2))]).unwrap();
    let mut bad = 0usize;

    for a in 0..dim {
        let p = UEAElement::generator(dim, Generator::P(a)).unwrap();
        let hat = twisted_coproduct(&p, &theta).unwrap();
        if hat.order != 0 || hat.value != coproduct_iter(&p, 2).unwrap() {
            bad += 1;
        }
    }

    let omega = ThetaMatrix::from_upper(dim, &[(0, 2, rat(1, 2))]).unwrap();
    let g = UEAElement::m_omega(dim, &omega).unwrap();
    let hat = twisted_coproduct(&g, &theta).unwrap();
    let mut correction = TensorUEA::zero(dim, 2);
    for a in 0..dim {
        for b in 0..dim {
            let mut entry = BigRational::zero();
            for k in 0..dim {
                entry += omega.get(a, k) * theta.get(k, b) - theta.get(a, k) * omega.get(k, b);
            }
            if !entry.is_zero() {
                let pa = UEAElement::generator(dim, Generator::P(a)).unwrap();
                let pb = UEAElement::generator(dim, Generator::P(b)).unwrap();
                correction = correction.add(
                    &TensorUEA::from_slot(&pa, 0, 2)
                        .mul(&TensorUEA::from_slot(&pb, 1, 2))
                        .scale(&Scalar::from_real(entry)),
                );
            }
        }
    }
    if correction.is_zero() {
        bad += 1;
    }
    if hat.order != 1 || hat.value != coproduct_iter(&g, 2).unwrap().add(&correction) {
        bad += 1;
    }
    c.finish(bad == 0, &format!("{bad} coproduct mismatches"));
}

#[test]
fn criterion_10_numeric_star_product() {
    let c = Criterion::start("10 numeric star product", 120);
    let spec = GridSpec::new(2, 64, 8.0).unwrap();
    let theta = ThetaMatrix::scalar_2d(rat(1, 2));
    let mut detail = String::new();
    let mut pass = true;

    // plane-wave phase law on exact lattice modes
    {
        let base = std::f64::consts::PI / spec.half_width();
        let h = [2.0 * base, base];
        let k = [base, -3.0 * base];
        let pw = |f: [f64; 2]| {
            GridFunction::from_fn(spec, move |x| {
                Complex64::from_polar(1.0, f[0] * x[0] + f[1] * x[1])
            })
        };
        let star = grid_star(&pw(h), &pw(k), &theta).unwrap();
        let twist = 0.5 * (h[0] * k[1] - h[1] * k[0]);
        let expect = GridFunction::from_fn(spec, move |x| {
            Complex64::from_polar(1.0, (h[0] + k[0]) * x[0] + (h[1] + k[1]) * x[1] - 0.5 * twist)
        });
        let res = star.max_abs_diff(&expect);
        pass &= res < 1e-6;
        detail.push_str(&format!("phase law {res:.2e}; "));
    }

    // integral cyclicity on a Gaussian-Hermite pair
    {
        let a = sample(&spec, &SampleExpr::Gaussian {
            sigma: 1.0,
            center: vec![0.0, 0.0],
        })
        .unwrap();
        let b = sample(&spec, &SampleExpr::Hermite {
            orders: vec![2, 1],
            sigma: 1.1,
        })
        .unwrap();
        let ab = grid_star(&a, &b, &theta).unwrap();
        let ba = grid_star(&b, &a, &theta).unwrap();
        let plain = grid_integral(&a.mul_pointwise(&b).unwrap());
        let res = (grid_integral(&ab) - plain)
            .norm()
            .max((grid_integral(&ab) - grid_integral(&ba)).norm());
        pass &= res < 1e-8;
        detail.push_str(&format!("cyclicity {res:.2e}; "));
    }

    // theta -> 0 degeneration
    {
        let a = sample(&spec, &SampleExpr::Gaussian {
            sigma: 1.0,
            center: vec![0.0, 0.0],
        })
        .unwrap();
        let b = sample(&spec, &SampleExpr::Hermite {
            orders: vec![1, 2],
            sigma: 1.2,
        })
        .unwrap();
        let star = grid_star(&a, &b, &ThetaMatrix::zero(2)).unwrap();
        let res = star.max_abs_diff(&a.mul_pointwise(&b).unwrap());
        pass &= res < 1e-10;
        detail.push_str(&format!("theta->0 {res:.2e}; "));
    }

    // grid against the exact terminating expansion
    {
        let theta_q = ThetaMatrix::scalar_2d(rat(1, 4));
        let x1 = PolyExpr::coordinate(2, 0);
        let x2 = PolyExpr::coordinate(2, 1);
        let p = &(&(&x1 * &x1) * &x2)
            + &(&x2.scale(&Scalar::from_int(-2)) + &PolyExpr::constant(2, Scalar::ratio(1, 2)));
        let taper = |u: f64| {
            let excess = (u.abs() - 3.0).max(0.0) / 2.5;
            (-excess.powi(4)).exp()
        };
        let sampled_p =
            GridFunction::from_fn(spec, |x| p.eval_f64(x) * taper(x[0]) * taper(x[1]));
        let g = sample(&spec, &SampleExpr::Gaussian {
            sigma: 1.0,
            center: vec![0.0, 0.0],
        })
        .unwrap();
        let star = grid_star(&sampled_p, &g, &theta_q).unwrap();
        let mut res: f64 = 0.0;
        for flat in 0..spec.total_points() {
            let x = spec.point(flat);
            if x[0].abs() > 1.5 || x[1].abs() > 1.5 {
                continue;
            }
            let reference = poly_gaussian_star_reference(&p, 1.0, &theta_q, &x[..2]);
            res = res.max((star.value(flat) - reference).norm());
        }
        pass &= res < 1e-6;
        detail.push_str(&format!("grid-vs-symbolic {res:.2e}"));
    }

    c.finish(pass, &detail);
}

#[test]
fn criterion_11_fock_restriction_and_additivity() {
    let c = Criterion::start("11 Fock restriction", 10);
    let modes = ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let theta = ThetaMatrix::scalar_2d(rat(1, 2));
    let mut worst: f64 = 0.0;
    for stats in [Statistics::Bose, Statistics::Fermi] {
        worst = worst.max(fock_restriction_residual(&modes, stats, 3, 2, &theta).unwrap());
    }
    // additivity holds for the invariant Hamiltonian (restriction residual
    // doubles as the check) and fails for the Landau one symbolically
    let landau = LandauParams::from_ints((1, 2), (1, 3)).unwrap();
    let report = two_particle_hamiltonian(&landau).unwrap();
    let breaks = !report.cross_term.is_zero();
    c.finish(
        worst < 1e-12 && breaks,
        &format!("restriction residual {worst:.3e}; Landau additivity breaks: {breaks}"),
    );
}
