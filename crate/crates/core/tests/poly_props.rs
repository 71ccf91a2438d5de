mod common;

use common::random_poly;
use polycurve::poly::{gcd, parse_poly, poly_sqrt, resultant, var_list, MultiPoly, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly3(seed: u64, deg: u32) -> MultiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly(&mut rng, &var_list(&["x", "y", "z"]), deg, 0.4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (p, q, r) = (poly3(s1, 3), poly3(s2, 3), poly3(s3, 2));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_parses_back(s in any::<u64>()) {
        let p = poly3(s, 4);
        let back = parse_poly(&p.to_string(), p.vars()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gcd_recovers_common_factor(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (f, g, h) = (poly3(s1, 2), poly3(s2, 2), poly3(s3, 2));
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let d = gcd(&(&f * &h), &(&g * &h));
        prop_assert!(d.divides(&(&f * &h)) && d.divides(&(&g * &h)));
        prop_assert!(h.divides(&d));
    }

    #[test]
    fn square_roots_of_squares(s in any::<u64>()) {
        let p = poly3(s, 3);
        prop_assume!(!p.is_zero());
        let r = poly_sqrt(&(&p * &p)).unwrap();
        prop_assert!(r == p || r == -&p);
    }

    #[test]
    fn resultant_is_product_over_roots(
        roots in proptest::collection::vec(-5i64..=5, 1..4),
        g in proptest::collection::vec(-4i64..=4, 1..4),
    ) {
        // f = ∏(x − r) is monic, so Res(f, g) = ∏ g(r).
        let vars = var_list(&["x"]);
        let x = MultiPoly::var(vars.clone(), 0);
        let f = roots.iter().fold(MultiPoly::one(vars.clone()), |acc, &r| {
            &acc * &(&x - &MultiPoly::constant(vars.clone(), Scalar::from_int(r)))
        });
        let gp = MultiPoly::from_terms(
            vars.clone(),
            g.iter().enumerate().map(|(i, &c)| (vec![i as u32], Scalar::from_int(c))),
        );
        prop_assume!(gp.total_degree().unwrap_or(0) >= 1);
        let expect = roots.iter().fold(Scalar::one(), |acc, &r| &acc * &gp.eval(&[Scalar::from_int(r)]));
        let res = resultant(&f, &gp, "x").unwrap();
        prop_assert_eq!(res.constant_value().unwrap_or_else(Scalar::zero), expect);
    }
}
