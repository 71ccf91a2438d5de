//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls into the routines it checks.
#![allow(dead_code)]

use num_complex::Complex64;
use polycurve::cover::{Cover, SurfaceInvariants, TensorStatus};
use polycurve::hermitian::{CMat2, PolydiskAutomorphism};
use polycurve::poly::{var_list, MultiPoly, Scalar, VarList};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

/// `h⁰(F_n, aΣ + bF)` by counting Cox ring monomials `x1^c1 x2^c2 x3^c3 x4^c4`
/// of class `(c1 + c3 + n·c4)·F + (c2 + c4)·Σ`.
pub fn cox_monomial_count(n: u32, a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 {
        // c_i ≥ 0 forces a, b ≥ 0.
        return 0;
    }
    let n = i64::from(n);
    let mut count = 0;
    for c4 in 0..=a {
        let c2 = a - c4;
        debug_assert!(c2 >= 0);
        let rest = b - n * c4;
        if rest >= 0 {
            // c1 + c3 = rest
            count += (rest + 1) as u64;
        }
    }
    count
}

/// Same number as lattice points of `{m1 ≥ −b, m2 ≥ −a, −m1 + n·m2 ≥ 0, m2 ≤ 0}`.
pub fn toric_polytope_count(n: u32, a: i64, b: i64) -> u64 {
    let n = i64::from(n);
    let mut count = 0;
    for m2 in -a..=0 {
        // −b ≤ m1 ≤ n·m2
        count += (n * m2 + b + 1).max(0) as u64;
    }
    count
}

/// `h⁰(T_X) = 2 + #(Demazure roots)` for the fan with rays
/// `(1,0), (0,1), (−1,n), (0,−1)`.
pub fn demazure_tangent_count(n: u32) -> u64 {
    let n = i64::from(n);
    let rays = [(1, 0), (0, 1), (-1, n), (0, -1)];
    let bound = n + 3;
    let mut roots = 0;
    for m1 in -bound..=bound {
        for m2 in -bound..=bound {
            let pairs: Vec<i64> = rays.iter().map(|(u, v)| m1 * u + m2 * v).collect();
            let is_root = (0..4).any(|i| pairs[i] == -1 && (0..4).all(|j| j == i || pairs[j] >= 0));
            if is_root {
                roots += 1;
            }
        }
    }
    2 + roots
}

pub fn xy() -> VarList {
    var_list(&["x", "y"])
}

/// Random polynomial in `vars` of total degree ≤ `deg` with integer
/// coefficients in `[−3, 3]` and about `density` of the monomials present.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &VarList, deg: u32, density: f64) -> MultiPoly {
    let n = vars.len();
    let mut terms = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec<R: Rng>(
        rng: &mut R,
        i: usize,
        left: u32,
        exps: &mut Vec<u32>,
        terms: &mut Vec<(Vec<u32>, Scalar)>,
        density: f64,
    ) {
        if i == exps.len() {
            if rng.random_bool(density) {
                let c = rng.random_range(-3i64..=3);
                terms.push((exps.clone(), Scalar::from_int(c)));
            }
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(rng, i + 1, left - e, exps, terms, density);
        }
        exps[i] = 0;
    }
    rec(rng, 0, deg, &mut exps, &mut terms, density);
    MultiPoly::from_terms(vars.clone(), terms)
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, vars: &VarList, deg: u32) -> MultiPoly {
    loop {
        let p = random_poly(rng, vars, deg, 0.6);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A consistent, fully specified record whose only applicable rule is `cover`.
pub fn consistent_record<R: Rng>(rng: &mut R, cover: Cover) -> SurfaceInvariants {
    let kaehler = Some(true);
    let other_tensor = *[TensorStatus::None, TensorStatus::SpecialNonUnique, TensorStatus::SemiSpecialOther]
        .choose(rng)
        .unwrap();
    let h0 = Some(rng.random_range(0..10));
    match cover {
        Cover::Ball => {
            let chi = rng.random_range(1..8);
            let q = rng.random_range(0..3);
            SurfaceInvariants {
                k2: Some(9 * chi),
                chi: Some(chi),
                q: Some(q),
                p_g: Some(chi - 1 + q),
                p2: Some(chi + 9 * chi),
                p12: Some(rng.random_range(2..500)),
                e: Some(3 * chi),
                h0_omega_mk: h0,
                tensor_status: other_tensor,
                kaehler,
            }
        }
        Cover::HxH => {
            let chi = rng.random_range(1..8);
            let q = rng.random_range(0..3);
            let t = *[TensorStatus::SemiSpecialUniqueType, TensorStatus::SpecialUnique].choose(rng).unwrap();
            SurfaceInvariants {
                k2: Some(8 * chi),
                chi: Some(chi),
                q: Some(q),
                p_g: Some(chi - 1 + q),
                p2: Some(chi + 8 * chi),
                p12: Some(rng.random_range(2..500)),
                e: Some(4 * chi),
                h0_omega_mk: h0,
                tensor_status: t,
                kaehler,
            }
        }
        Cover::P1xP1 => SurfaceInvariants {
            k2: Some(8),
            chi: Some(1),
            q: Some(0),
            p_g: Some(0),
            p2: Some(0),
            p12: Some(0),
            e: Some(4),
            h0_omega_mk: Some(6),
            tensor_status: TensorStatus::SpecialUnique,
            kaehler,
        },
        Cover::P1xC => SurfaceInvariants {
            k2: Some(0),
            chi: Some(0),
            q: Some(1),
            p_g: Some(0),
            p2: Some(0),
            p12: Some(0),
            e: Some(0),
            h0_omega_mk: h0,
            tensor_status: other_tensor,
            kaehler,
        },
        Cover::P1xH => {
            let q = rng.random_range(2..8);
            SurfaceInvariants {
                k2: Some(8 * (1 - q)),
                chi: Some(1 - q),
                q: Some(q),
                p_g: Some(0),
                p2: Some(0),
                p12: Some(0),
                e: Some(4 * (1 - q)),
                h0_omega_mk: h0,
                tensor_status: other_tensor,
                kaehler,
            }
        }
        Cover::C2 => {
            let q = rng.random_range(1..=2);
            SurfaceInvariants {
                k2: Some(0),
                chi: Some(0),
                q: Some(q),
                p_g: Some(q - 1),
                p2: Some(q - 1),
                p12: Some(1),
                e: Some(0),
                h0_omega_mk: h0,
                tensor_status: other_tensor,
                kaehler,
            }
        }
        Cover::CxH => {
            let q = rng.random_range(1..4);
            SurfaceInvariants {
                k2: Some(0),
                chi: Some(0),
                q: Some(q),
                p_g: Some(q - 1),
                p2: Some(rng.random_range(1..5)),
                p12: Some(rng.random_range(2..50)),
                e: Some(0),
                h0_omega_mk: h0,
                tensor_status: other_tensor,
                kaehler,
            }
        }
        Cover::NoRuleApplies | Cover::Inconsistent => panic!("not a concrete cover"),
    }
}

pub const CONCRETE: [Cover; 7] = [
    Cover::Ball,
    Cover::HxH,
    Cover::P1xP1,
    Cover::P1xC,
    Cover::P1xH,
    Cover::C2,
    Cover::CxH,
];

/// Forgets each field independently with probability `p`.
pub fn erase<R: Rng>(rng: &mut R, s: &SurfaceInvariants, p: f64) -> SurfaceInvariants {
    let mut out = s.clone();
    let mut drop = |v: &mut Option<i64>| {
        if rng.random_bool(p) {
            *v = None;
        }
    };
    drop(&mut out.k2);
    drop(&mut out.chi);
    drop(&mut out.q);
    drop(&mut out.p_g);
    drop(&mut out.p2);
    drop(&mut out.p12);
    drop(&mut out.e);
    drop(&mut out.h0_omega_mk);
    if rng.random_bool(p) {
        out.tensor_status = TensorStatus::Unknown;
    }
    if rng.random_bool(p) {
        out.kaehler = None;
    }
    out
}

fn random_entry<R: Rng>(rng: &mut R, complex: bool) -> Complex64 {
    if complex {
        Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
    } else {
        Complex64::new(rng.random_range(-4i32..=4) as f64, 0.0)
    }
}

pub fn random_mobius<R: Rng>(rng: &mut R) -> CMat2 {
    let complex = rng.random_bool(0.5);
    loop {
        let m = CMat2::from_fn(|_, _| random_entry(rng, complex));
        if m.determinant().norm() > 0.5 {
            return m;
        }
    }
}

pub fn random_polydisk<R: Rng>(rng: &mut R) -> PolydiskAutomorphism {
    let r = rng.random_range(1..=5);
    let mut sigma: Vec<usize> = (0..r).collect();
    sigma.shuffle(rng);
    let psi = (0..r).map(|_| random_mobius(rng)).collect();
    PolydiskAutomorphism::new(sigma, psi).unwrap()
}

/// Translations `z ↦ z + t` on every factor: the only fixed point is `(∞, …, ∞)`.
pub fn parabolic_polydisk<R: Rng>(rng: &mut R) -> PolydiskAutomorphism {
    let r = rng.random_range(1..=5);
    let mut sigma: Vec<usize> = (0..r).collect();
    sigma.shuffle(rng);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let psi = (0..r)
        .map(|_| CMat2::new(one, Complex64::new(rng.random_range(1..5) as f64, 0.0), zero, one))
        .collect();
    PolydiskAutomorphism::new(sigma, psi).unwrap()
}

/// `|u₀v₁ − u₁v₀| / (‖u‖·‖v‖)` from raw homogeneous coordinates.
pub fn chordal(u: [Complex64; 2], v: [Complex64; 2]) -> f64 {
    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    (u[0] * v[1] - u[1] * v[0]).norm() / (nu * nv)
}

/// Residual of `x_i = ψ_i(x_{σ(i)})` computed from raw matrix products.
pub fn fixed_point_residual(a: &PolydiskAutomorphism, x: &[[Complex64; 2]]) -> f64 {
    let mut worst = 0.0f64;
    for (i, m) in a.psi().iter().enumerate() {
        let src = x[a.sigma()[i]];
        let img = [m[(0, 0)] * src[0] + m[(0, 1)] * src[1], m[(1, 0)] * src[0] + m[(1, 1)] * src[1]];
        worst = worst.max(chordal(x[i], img));
    }
    worst
}

/// A nilpotent instance `(a, b, c) = (δβγ, −δβ², δγ²)` of total degree ≤ 4.
pub fn random_nilpotent<R: Rng>(rng: &mut R) -> (MultiPoly, MultiPoly, MultiPoly) {
    let vars = xy();
    loop {
        let deg_bg = rng.random_range(0..=2u32);
        let delta = random_nonzero_poly(rng, &vars, 4 - 2 * deg_bg);
        let beta = random_poly(rng, &vars, deg_bg, 0.6);
        let gamma = random_poly(rng, &vars, deg_bg, 0.6);
        if beta.is_zero() && gamma.is_zero() {
            continue;
        }
        let db = &delta * &beta;
        let a = &db * &gamma;
        let b = -&(&db * &beta);
        let c = &(&delta * &gamma) * &gamma;
        return (a, b, c);
    }
}

/// Sign of a permutation by counting inversions.
pub fn inversion_sign(perm: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
