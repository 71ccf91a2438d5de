mod common;

use common::{fixed_point_residual, parabolic_polydisk, random_polydisk};
use num_complex::Complex64;
use polycurve::hermitian::fixed_point::{polydisk_fixed_point_with, EigenChoice};
use polycurve::hermitian::su22::{domain_margin, max_norm};
use polycurve::hermitian::{
    moebius_action, polydisk_fixed_point, quartic_invariance_factor, tensor_invariance_check, CMat2, SiegelPoint,
    Su22Element,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn action_preserves_domain_and_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..300 {
        let g1 = Su22Element::random(&mut rng, 0.5);
        let g2 = Su22Element::random(&mut rng, 0.5);
        let z = SiegelPoint::random(&mut rng, 0.95);
        let w = moebius_action(&g1, &z).unwrap();
        assert!(domain_margin(w.matrix()) > 0.0);
        let direct = moebius_action(&g1.compose(&g2), &z).unwrap();
        let nested = moebius_action(&g1, &moebius_action(&g2, &z).unwrap()).unwrap();
        assert!(max_norm(&(direct.matrix() - nested.matrix())) < 1e-10);
    }
}

#[test]
fn inverse_element_undoes_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let g = Su22Element::random(&mut rng, 0.5);
        let inv = Su22Element::from_matrix(&g.to_matrix().try_inverse().unwrap());
        let z = SiegelPoint::random(&mut rng, 0.9);
        let back = moebius_action(&inv, &moebius_action(&g, &z).unwrap()).unwrap();
        assert!(max_norm(&(back.matrix() - z.matrix())) < 1e-10);
    }
}

#[test]
fn jacobian_is_det_q_to_the_fourth() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..100 {
        let g = Su22Element::random(&mut rng, 0.5);
        let z = SiegelPoint::random(&mut rng, 0.9);
        let r = tensor_invariance_check(&g, &z, 1e-8).unwrap();
        assert!(r.within_tol, "{r:?}");
        let det_cz_d = (g.c * z.matrix() + g.d).determinant();
        let expect = Complex64::new(1.0, 0.0) / det_cz_d.powu(4);
        assert!((r.jacobian_det - expect).norm() <= 1e-9 * expect.norm().max(1.0));
    }
}

#[test]
fn fixed_points_on_random_polydisk_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..200 {
        let a = random_polydisk(&mut rng);
        for choice in [EigenChoice::LargerModulus, EigenChoice::SmallerModulus] {
            let fp = polydisk_fixed_point_with(&a, choice, 0);
            let raw: Vec<[Complex64; 2]> = fp.coords.iter().map(|p| p.coords()).collect();
            assert!(fixed_point_residual(&a, &raw) <= 1e-9, "{a:?}");
        }
    }
}

#[test]
fn translations_fix_infinity() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..20 {
        let a = parabolic_polydisk(&mut rng);
        let fp = polydisk_fixed_point(&a);
        assert!(fp.coords.iter().all(|p| p.is_infinity(1e-12)));
        assert!(fp.residual <= 1e-12);
    }
}

fn cmat() -> impl Strategy<Value = CMat2> {
    proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 4)
        .prop_map(|v| CMat2::from_fn(|r, c| Complex64::new(v[2 * r + c].0, v[2 * r + c].1)))
}

proptest! {
    #[test]
    fn quartic_factor_identity(p in cmat(), q in cmat()) {
        let (d4, pred) = quartic_invariance_factor(&p, &q);
        let scale = (p.iter().map(|z| z.norm()).fold(1.0, f64::max) * q.iter().map(|z| z.norm()).fold(1.0, f64::max)).powi(4);
        prop_assert!((d4 - pred).norm() <= 1e-12 * scale);
    }

    #[test]
    fn anchor_relabeling_keeps_residual(seed in any::<u64>(), off in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_polydisk(&mut rng);
        let fp = polydisk_fixed_point_with(&a, EigenChoice::LargerModulus, off);
        prop_assert!(fp.residual <= 1e-9);
    }
}
