//! Property tests for the algebraic invariants of the symbolic layer.

use num_rational::BigRational;
use proptest::prelude::*;

use moyal_core::multi_index::MultiIndex;
use moyal_core::weyl::{inverse_weyl, weyl_normal_form};
use moyal_core::{moyal_star, PolyExpr, Scalar, ThetaMatrix};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Sparse polynomials in two variables with small rational coefficients.
fn arb_poly() -> impl Strategy<Value = PolyExpr> {
    prop::collection::vec(
        (
            0u32..=3,
            0u32..=3,
            -6i64..=6,
            1i64..=3,
            -6i64..=6,
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut p = PolyExpr::zero(2);
        for (e1, e2, num, den, im) in terms {
            p.add_term(
                MultiIndex::new(vec![e1, e2]),
                Scalar::new(rat(num, den), rat(im, den)),
            );
        }
        p
    })
}

fn arb_theta() -> impl Strategy<Value = ThetaMatrix> {
    (-4i64..=4, 1i64..=5).prop_map(|(p, q)| ThetaMatrix::scalar_2d(rat(p, q)))
}

proptest! {
    #[test]
    fn star_is_associative(a in arb_poly(), b in arb_poly(), c in arb_poly(), theta in arb_theta()) {
        let left = moyal_star(&moyal_star(&a, &b, &theta).unwrap(), &c, &theta).unwrap();
        let right = moyal_star(&a, &moyal_star(&b, &c, &theta).unwrap(), &theta).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_has_a_unit(a in arb_poly(), theta in arb_theta()) {
        let one = PolyExpr::one(2);
        prop_assert_eq!(moyal_star(&one, &a, &theta).unwrap(), a.clone());
        prop_assert_eq!(moyal_star(&a, &one, &theta).unwrap(), a);
    }

    #[test]
    fn star_degenerates_at_zero_theta(a in arb_poly(), b in arb_poly()) {
        let zero = ThetaMatrix::zero(2);
        prop_assert_eq!(moyal_star(&a, &b, &zero).unwrap(), &a * &b);
    }

    #[test]
    fn conjugation_reverses_star_factors(a in arb_poly(), b in arb_poly(), theta in arb_theta()) {
        let lhs = moyal_star(&a, &b, &theta).unwrap().conj();
        let rhs = moyal_star(&b.conj(), &a.conj(), &theta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_bilinear(a in arb_poly(), b in arb_poly(), c in arb_poly(), theta in arb_theta()) {
        let sum_first = moyal_star(&(&a + &b), &c, &theta).unwrap();
        let split = &moyal_star(&a, &c, &theta).unwrap() + &moyal_star(&b, &c, &theta).unwrap();
        prop_assert_eq!(sum_first, split);
    }

    #[test]
    fn weyl_round_trip(a in arb_poly(), theta in arb_theta()) {
        let coeffs = weyl_normal_form(&a, &theta).unwrap();
        prop_assert_eq!(inverse_weyl(&coeffs, &theta).unwrap(), a);
    }
}
