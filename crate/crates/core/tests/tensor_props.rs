mod common;

use common::{inversion_sign, random_nilpotent, random_nonzero_poly, random_poly, xy};
use polycurve::poly::{gcd, MultiPoly, Scalar};
use polycurve::tensor::{
    blowup_pullback, determinant_class, eigen_split, intersection_length, nilpotent_from_tensor, permutation_sign,
    product_tensor_sign, to_endomorphism, EndoMatrix, Mobius, SpecialTensor2,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tensor_from_matrix(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> SpecialTensor2 {
    // [[−a12, −a22], [a11, a12]] = [[a, b], [c, −a]]
    SpecialTensor2::new(c.clone(), -a, -b).unwrap()
}

#[test]
fn nilpotent_instances_decompose_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let (a, b, c) = random_nilpotent(&mut rng);
        let t = tensor_from_matrix(&a, &b, &c);
        let m = to_endomorphism(&t);
        assert!(m.trace().is_zero());
        assert!(m.square().iter().flatten().all(MultiPoly::is_zero));
        assert!(determinant_class(&t).det.is_zero());
        let d = nilpotent_from_tensor(&t).unwrap();
        assert_eq!(d.reconstruct(), (a.clone(), b.clone(), c.clone()));
        if !d.beta.is_zero() && !d.gamma.is_zero() {
            assert!(gcd(&d.beta, &d.gamma).is_constant());
        }
    }
}

#[test]
fn constant_determinant_splits_into_eigenlines() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let vars = xy();
    for _ in 0..100 {
        let p = random_poly(&mut rng, &vars, 2, 0.6);
        let lam = Scalar::ratio(rng.random_range(1..6), rng.random_range(1..4));
        // det [[p, −(p² − λ²)], [1, −p]] = −λ²
        let k = -&(&lam * &lam);
        let m12 = -&(&(&p * &p) + &MultiPoly::constant(vars.clone(), k));
        let m = EndoMatrix::new(p.clone(), m12, MultiPoly::one(vars.clone()), -&p).unwrap();
        assert_eq!(m.det().constant_value(), Some(-&(&lam * &lam)));
        let dirs = eigen_split(&m).unwrap();
        for d in &dirs {
            let image = m.apply(&d.vector);
            assert_eq!(image[0], d.vector[0].scale(&d.eigenvalue));
            assert_eq!(image[1], d.vector[1].scale(&d.eigenvalue));
        }
        assert_eq!(&dirs[0].eigenvalue + &dirs[1].eigenvalue, Scalar::zero());
    }
}

#[test]
fn blowup_regular_iff_coefficients_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let vars = xy();
    let mut regular = 0;
    for _ in 0..300 {
        let p = [Scalar::from_int(rng.random_range(-2..=2)), Scalar::from_int(rng.random_range(-2..=2))];
        let through_p = |rng: &mut ChaCha8Rng| {
            // A linear form vanishing at p.
            let (u, v) = (rng.random_range(-2i64..=2), rng.random_range(1i64..=2));
            let s = MultiPoly::constant(vars.clone(), Scalar::from_int(u));
            let x = &MultiPoly::var(vars.clone(), 0) - &MultiPoly::constant(vars.clone(), p[0].clone());
            let y = &MultiPoly::var(vars.clone(), 1) - &MultiPoly::constant(vars.clone(), p[1].clone());
            &(&s * &x) + &y.scale(&Scalar::from_int(v))
        };
        let vanish = rng.random_bool(0.5);
        let mut coeffs: Vec<MultiPoly> = (0..3).map(|_| random_nonzero_poly(&mut rng, &vars, 3)).collect();
        if vanish {
            for c in coeffs.iter_mut() {
                *c = &*c * &through_p(&mut rng);
            }
        }
        let t = SpecialTensor2::new(coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone())
            .unwrap()
            .with_basepoint(p.clone());
        let oracle = coeffs.iter().all(|c| c.eval(&p).is_zero());
        let bl = blowup_pullback(&t);
        assert_eq!(bl.regular, oracle);
        assert_eq!(bl.vanishes_at_basepoint, oracle);
        regular += usize::from(oracle);
    }
    assert!(regular > 100);
}

#[test]
fn intersection_with_graph_counts_roots() {
    let vars = xy();
    let x = MultiPoly::var(vars.clone(), 0);
    let y = MultiPoly::var(vars.clone(), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..40 {
        let k = rng.random_range(1..=4);
        let mut f = MultiPoly::one(vars.clone());
        for _ in 0..k {
            let r = MultiPoly::constant(vars.clone(), Scalar::from_int(rng.random_range(-3..=3)));
            f = &f * &(&x - &r);
        }
        let q = random_poly(&mut rng, &vars, 2, 0.5);
        let q = MultiPoly::from_terms(vars.clone(), q.terms().filter(|(m, _)| m.exponents()[1] == 0).map(|(m, c)| (m.exponents().to_vec(), c.clone())));
        assert_eq!(intersection_length(&f, &(&y - &q)), Some(k));
    }
}

fn mobius() -> impl Strategy<Value = Mobius> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| {
            Mobius::new(Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c), Scalar::from_int(d)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_sign_is_permutation_sign(
        (perm, maps) in (1usize..=3).prop_flat_map(|n| (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(mobius(), n),
        ))
    ) {
        let n = perm.len();
        let s = product_tensor_sign(n, &perm, &maps).unwrap();
        prop_assert_eq!(s, Scalar::from_int(i64::from(inversion_sign(&perm))));
        prop_assert_eq!(permutation_sign(&perm).unwrap(), inversion_sign(&perm));
    }

    #[test]
    fn trace_zero_for_any_tensor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = xy();
        let t = SpecialTensor2::new(
            random_nonzero_poly(&mut rng, &vars, 3),
            random_poly(&mut rng, &vars, 3, 0.5),
            random_poly(&mut rng, &vars, 3, 0.5),
        ).unwrap();
        let m = to_endomorphism(&t);
        prop_assert!(m.trace().is_zero());
        // M² = −det·I for a trace-free 2×2 matrix.
        let sq = m.square();
        let det = m.det();
        prop_assert_eq!(&sq[0][0], &-&det);
        prop_assert_eq!(&sq[1][1], &-&det);
        prop_assert!(sq[0][1].is_zero() && sq[1][0].is_zero());
    }
}
