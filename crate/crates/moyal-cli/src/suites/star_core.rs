//! Exact checks of the star product, commutators and the Weyl map.

use num_rational::BigRational;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use moyal_core::multi_index::{indices_up_to_degree, MultiIndex};
use moyal_core::weyl::{inverse_weyl, star_monomial, weyl_normal_form};
use moyal_core::{moyal_star, star_commutator, PolyExpr, Scalar, ThetaMatrix};

use crate::config::Config;
use crate::report::{Check, CheckBuilder};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// A random sparse polynomial with small rational coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32, terms: usize) -> PolyExpr {
    let mut p = PolyExpr::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let mut left = rng.random_range(0..=max_degree);
        for slot in 0..nvars {
            let e = rng.random_range(0..=left);
            exps[slot] = e;
            left -= e;
            if left == 0 {
                break;
            }
        }
        let num = rng.random_range(-9..=9i64);
        let den = rng.random_range(1..=4i64);
        let im_num = rng.random_range(-9..=9i64);
        let coeff = Scalar::new(rat(num, den), rat(im_num, den));
        p.add_term(MultiIndex::new(exps), coeff);
    }
    p
}

fn sample_thetas(nvars: usize) -> Vec<ThetaMatrix> {
    match nvars {
        2 => vec![
            ThetaMatrix::scalar_2d(rat(1, 3)),
            ThetaMatrix::scalar_2d(rat(-2, 5)),
        ],
        3 => vec![
            ThetaMatrix::from_upper(3, &[(0, 1, rat(1, 2)), (1, 2, rat(-1, 3))]).unwrap(),
        ],
        4 => vec![
            ThetaMatrix::from_upper(4, &[(0, 1, rat(1, 2)), (2, 3, rat(1, 2)), (1, 2, rat(2, 7))])
                .unwrap(),
        ],
        _ => vec![ThetaMatrix::zero(nvars)],
    }
}

pub fn checks(config: &Config) -> Vec<Check> {
    let mut b = CheckBuilder::new();
    let seed = config.seed;

    b.exact(
        "coordinate-algebra",
        "[x^h *, x^k] = i theta^{hk} for m <= 3 and all particle pairs up to n = 3",
        "star-commutator",
        || {
            let mut violations = 0;
            for m in 2..=3usize {
                let theta = match m {
                    2 => ThetaMatrix::scalar_2d(rat(2, 7)),
                    _ => ThetaMatrix::from_upper(3, &[(0, 1, rat(2, 7)), (0, 2, rat(-1, 4)), (1, 2, rat(3, 5))])
                        .unwrap(),
                };
                for n in 1..=3usize {
                    let big = theta.multiparticle(n).unwrap();
                    let nv = n * m;
                    for i in 0..nv {
                        for j in 0..nv {
                            let a = PolyExpr::coordinate(nv, i);
                            let c = PolyExpr::coordinate(nv, j);
                            let comm = star_commutator(&a, &c, &big).unwrap();
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
            violations
        },
    );

    b.exact(
        "associativity-exhaustive",
        "(a*b)*c = a*(b*c) over all monomial triples of degree <= 4 in 2 variables",
        "star-associativity",
        || {
            let theta = ThetaMatrix::scalar_2d(rat(1, 3));
            let monos: Vec<PolyExpr> = indices_up_to_degree(2, 4)
                .into_iter()
                .map(|e| PolyExpr::monomial(2, e, Scalar::one()))
                .collect();
            let mut violations = 0;
            for a in &monos {
                for c in &monos {
                    for d in &monos {
                        let left = moyal_star(&moyal_star(a, c, &theta).unwrap(), d, &theta).unwrap();
                        let right = moyal_star(a, &moyal_star(c, d, &theta).unwrap(), &theta).unwrap();
                        if left != right {
                            violations += 1;
                        }
                    }
                }
            }
            violations
        },
    );

    b.exact(
        "associativity-random",
        "(a*b)*c = a*(b*c) on 200 seeded random triples of degree <= 6",
        "star-associativity",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut violations = 0;
            for trial in 0..200 {
                let nvars = if trial % 2 == 0 { 2 } else { 4 };
                for theta in sample_thetas(nvars) {
                    let a = random_poly(&mut rng, nvars, 6, 5);
                    let c = random_poly(&mut rng, nvars, 6, 5);
                    let d = random_poly(&mut rng, nvars, 6, 5);
                    let left = moyal_star(&moyal_star(&a, &c, &theta).unwrap(), &d, &theta).unwrap();
                    let right = moyal_star(&a, &moyal_star(&c, &d, &theta).unwrap(), &theta).unwrap();
                    if left != right {
                        violations += 1;
                    }
                }
            }
            violations
        },
    );

    b.exact(
        "unit-element",
        "1 * f = f * 1 = f and the theta -> 0 limit is the pointwise product",
        "star-unit",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let theta = ThetaMatrix::scalar_2d(rat(3, 4));
            let zero = ThetaMatrix::zero(2);
            let one = PolyExpr::one(2);
            let mut violations = 0;
            for _ in 0..20 {
                let f = random_poly(&mut rng, 2, 5, 4);
                if moyal_star(&one, &f, &theta).unwrap() != f {
                    violations += 1;
                }
                if moyal_star(&f, &one, &theta).unwrap() != f {
                    violations += 1;
                }
                let g = random_poly(&mut rng, 2, 5, 4);
                if moyal_star(&f, &g, &zero).unwrap() != &f * &g {
                    violations += 1;
                }
            }
            violations
        },
    );

    b.exact(
        "conjugation",
        "(a * b)^* = b^* * a^* for the Moyal twist",
        "star-conjugation",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
            let theta = ThetaMatrix::scalar_2d(rat(1, 2));
            let mut violations = 0;
            for _ in 0..50 {
                let a = random_poly(&mut rng, 2, 5, 4);
                let c = random_poly(&mut rng, 2, 5, 4);
                let lhs = moyal_star(&a, &c, &theta).unwrap().conj();
                let rhs = moyal_star(&c.conj(), &a.conj(), &theta).unwrap();
                if lhs != rhs {
                    violations += 1;
                }
            }
            violations
        },
    );

    b.exact(
        "weyl-roundtrip",
        "inverse of the star-monomial expansion is the identity on degree <= 4",
        "weyl-map",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
            let theta = ThetaMatrix::scalar_2d(rat(1, 3));
            let mut violations = 0;
            for e in indices_up_to_degree(2, 4) {
                let f = PolyExpr::monomial(2, e, Scalar::ratio(3, 2));
                let back = inverse_weyl(&weyl_normal_form(&f, &theta).unwrap(), &theta).unwrap();
                if back != f {
                    violations += 1;
                }
            }
            for _ in 0..25 {
                let f = random_poly(&mut rng, 2, 4, 5);
                let back = inverse_weyl(&weyl_normal_form(&f, &theta).unwrap(), &theta).unwrap();
                if back != f {
                    violations += 1;
                }
            }
            violations
        },
    );

    b.exact(
        "pbw-change-of-basis",
        "ordered star monomials of degree <= 3 span the monomials with unit determinant",
        "pbw-property",
        || {
            let mut violations = 0;
            for (m, theta) in [
                (2usize, ThetaMatrix::scalar_2d(rat(1, 2))),
                (3, ThetaMatrix::from_upper(3, &[(0, 1, rat(1, 2)), (1, 2, rat(1, 3))]).unwrap()),
            ] {
                let basis = indices_up_to_degree(m, 3);
                let index_of = |e: &MultiIndex| basis.iter().position(|x| x == e).unwrap();
                // columns: star monomials expanded over ordinary monomials
                let dim = basis.len();
                let mut matrix = vec![vec![Scalar::zero(); dim]; dim];
                for (col, e) in basis.iter().enumerate() {
                    let sm = star_monomial(e, &theta).unwrap();
                    for (mono, coeff) in sm.terms() {
                        matrix[index_of(mono)][col] = coeff.clone();
                    }
                }
                if exact_determinant(matrix) != Scalar::one() {
                    violations += 1;
                }
            }
            violations
        },
    );

    b.exact(
        "coordinate-differences",
        "f(x) * h(xi) = f h = h(xi) * f(x) for difference polynomials xi",
        "difference-centrality",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
            let theta = ThetaMatrix::scalar_2d(rat(2, 5)).multiparticle(2).unwrap();
            let nv = 4;
            let mut violations = 0;
            for _ in 0..20 {
                let f = random_poly(&mut rng, nv, 4, 4);
                // h is a polynomial in the differences xi^a = x^a_1 - x^a_2
                let h_diff = random_poly(&mut rng, 2, 3, 3);
                let forms: Vec<PolyExpr> = (0..2)
                    .map(|axis| {
                        &PolyExpr::coordinate(nv, axis) - &PolyExpr::coordinate(nv, 2 + axis)
                    })
                    .collect();
                let h = h_diff.substitute_linear(&forms).unwrap();
                let plain = &f * &h;
                if moyal_star(&f, &h, &theta).unwrap() != plain {
                    violations += 1;
                }
                if moyal_star(&h, &f, &theta).unwrap() != plain {
                    violations += 1;
                }
            }
            violations
        },
    );

    b.exact(
        "expression-roundtrip",
        "printing, reparsing and reprinting an expression is stable on the corpus",
        "plumbing",
        || {
            let corpus = [
                "x1*x2 + (1/2)*i",
                "x1^3 - 2*x2 + 1",
                "(2/3)*x1^2*x2 - i*x2^2 + (1/5+2/7*i)*x1",
                "-x1 + 7",
                "x1_2^2*x2 - (1/2)*x2_2",
                "0",
            ];
            let mut violations = 0;
            for text in corpus {
                let Ok((poly, layout)) = crate::expr::parse_expression(text) else {
                    violations += 1;
                    continue;
                };
                let printed = crate::expr::print_poly(&poly, &layout);
                match crate::expr::parse_expression(&printed) {
                    Ok((reparsed, layout2)) => {
                        if crate::expr::print_poly(&reparsed, &layout2) != printed {
                            violations += 1;
                        }
                    }
                    Err(_) => violations += 1,
                }
            }
            violations
        },
    );

    b.finish()
}

/// Exact determinant by fraction-free Gaussian elimination over the field.
fn exact_determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Scalar::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -&det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        for row in (col + 1)..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &pivot;
            let upper: Vec<Scalar> = m[col][col..].to_vec();
            for (offset, u) in upper.iter().enumerate() {
                let delta = &factor * u;
                m[row][col + offset] = &m[row][col + offset] - &delta;
            }
        }
    }
    det
}
