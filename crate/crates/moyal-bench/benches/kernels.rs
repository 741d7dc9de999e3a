//! Benchmarks for the hot kernels: the exact star product, the spectral
//! grid star, twisted-relation verification and the Landau diagonalization.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use num_rational::BigRational;

use moyal_core::dynamics::{landau_spectrum, two_particle_hamiltonian, LandauParams};
use moyal_core::fock::{twisted_ccr_residual, CcrAlgebra, Statistics};
use moyal_core::grid::{grid_star, sample, GridSpec, SampleExpr};
use moyal_core::hopf::ModeBasis;
use moyal_core::{moyal_star, PolyExpr, Scalar, ThetaMatrix};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Deterministic dense-ish polynomial of the given degree.
fn test_poly(nvars: usize, degree: u32, salt: i64) -> PolyExpr {
    let mut p = PolyExpr::zero(nvars);
    let mut counter = salt;
    for e in moyal_core::multi_index::indices_up_to_degree(nvars, degree) {
        counter = counter.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        if counter % 3 == 0 {
            continue; // keep it sparse-ish
        }
        let num = (counter % 17) - 8;
        p.add_term(e, Scalar::new(rat(num, 3), rat((counter % 5) - 2, 2)));
    }
    p
}

fn bench_symbolic_star(c: &mut Criterion) {
    let theta = ThetaMatrix::scalar_2d(rat(1, 3));
    let a = test_poly(2, 6, 1);
    let b = test_poly(2, 6, 2);
    c.bench_function("moyal_star 2 vars degree 6", |bench| {
        bench.iter(|| moyal_star(black_box(&a), black_box(&b), black_box(&theta)).unwrap())
    });

    let theta4 = ThetaMatrix::from_upper(
        4,
        &[(0, 1, rat(1, 2)), (2, 3, rat(1, 2)), (1, 2, rat(2, 7))],
    )
    .unwrap();
    let a4 = test_poly(4, 4, 3);
    let b4 = test_poly(4, 4, 4);
    c.bench_function("moyal_star 4 vars degree 4", |bench| {
        bench.iter(|| moyal_star(black_box(&a4), black_box(&b4), black_box(&theta4)).unwrap())
    });
}

fn bench_grid_star(c: &mut Criterion) {
    let theta = ThetaMatrix::scalar_2d(rat(1, 2));
    for n in [32usize, 64] {
        let spec = GridSpec::new(2, n, 8.0).unwrap();
        let a = sample(&spec, &SampleExpr::Gaussian {
            sigma: 1.0,
            center: vec![0.0, 0.0],
        })
        .unwrap();
        let b = sample(&spec, &SampleExpr::Hermite {
            orders: vec![1, 2],
            sigma: 1.1,
        })
        .unwrap();
        c.bench_function(&format!("grid_star {n}x{n}"), |bench| {
            bench.iter(|| grid_star(black_box(&a), black_box(&b), black_box(&theta)).unwrap())
        });
    }
}

fn bench_twisted_ccr(c: &mut Criterion) {
    let modes = ModeBasis::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, -1]]).unwrap();
    let theta = ThetaMatrix::scalar_2d(rat(1, 2));
    let algebra = CcrAlgebra::build(&modes, Statistics::Bose, 4).unwrap();
    c.bench_function("twisted_ccr_residual 4 modes Nmax 4", |bench| {
        bench.iter_batched(
            || algebra.dress(&theta).unwrap(),
            |dressed| twisted_ccr_residual(&algebra, black_box(&dressed), &theta).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_dynamics(c: &mut Criterion) {
    let params = LandauParams::from_ints((1, 1), (1, 2)).unwrap();
    c.bench_function("landau_spectrum quanta 30", |bench| {
        bench.iter(|| landau_spectrum(black_box(&params), 30).unwrap())
    });
    let p2 = LandauParams::from_ints((1, 2), (1, 3)).unwrap();
    c.bench_function("two_particle_hamiltonian", |bench| {
        bench.iter(|| two_particle_hamiltonian(black_box(&p2)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_symbolic_star,
    bench_grid_star,
    bench_twisted_ccr,
    bench_dynamics
);
criterion_main!(benches);
