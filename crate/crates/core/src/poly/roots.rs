//! Root isolation for univariate polynomials and binary forms.
//!
//! Exact roots in ℚ(i) are found by numerical isolation followed by an exact
//! membership test: after clearing denominators, `c·ρ` is a Gaussian integer
//! for every root `ρ ∈ ℚ(i)` (with `c` the leading coefficient), so rounding
//! the float estimate of `c·ρ` and checking the candidate exactly is a
//! complete test whenever the float estimate is within 1/2 of the truth.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{gcd, MultiPoly, Scalar};

/// All complex roots of `Σ coeffs[k]·z^k` (ascending order, nonzero leading
/// coefficient) by the Aberth–Ehrlich iteration.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..=n).rev() {
            dp = dp * z + p;
            p = p * z + monic[k];
        }
        (p, dp)
    };
    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();
    for _ in 0..800 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 0.0 {
                        s += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    // Newton polish.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zk);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zk - p / dp;
            if next.re.is_finite() && next.im.is_finite() {
                *zk = next;
            }
        }
    }
    z
}

/// Exact roots in ℚ(i) of a univariate polynomial, with multiplicities.
#[derive(Debug, Clone)]
pub struct UnivariateRoots {
    pub roots: Vec<(Scalar, u32)>,
    /// Monic cofactor carrying the roots outside ℚ(i).
    pub residual: MultiPoly,
}

impl UnivariateRoots {
    /// Number of distinct roots outside ℚ(i).
    pub fn residual_distinct(&self, v: usize) -> u32 {
        squarefree_part(&self.residual).degree_in(v)
    }
}

pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    let v = (0..p.nvars()).find(|&i| p.involves(i));
    match v {
        None => p.monic(),
        Some(v) => {
            let g = gcd(p, &p.derivative(v));
            p.div_exact(&g).expect("gcd divides").monic()
        }
    }
}

/// Ascending scalar coefficients of a polynomial free of all variables but `v`.
pub fn univariate_coefficients(p: &MultiPoly, v: usize) -> Vec<Scalar> {
    p.coefficients_in(v)
        .iter()
        .map(|c| c.constant_value().expect("polynomial must be univariate"))
        .collect()
}

fn eval_univariate(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn round_half(x: f64) -> Vec<BigRational> {
    let f = x.floor();
    [f, f + 1.0]
        .iter()
        .filter_map(|&v| num_bigint::BigInt::try_from(v as i128).ok())
        .map(BigRational::from_integer)
        .collect()
}

/// Roots in ℚ(i) of `p`, univariate in the variable at `v`.
pub fn gaussian_rational_roots(p: &MultiPoly, v: usize) -> UnivariateRoots {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let sqf = squarefree_part(p);
    let coeffs = univariate_coefficients(&sqf, v);
    // Clear denominators so the coefficients are Gaussian integers.
    let lcm = coeffs
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let scale = Scalar::from_bigint(lcm);
    let int_coeffs: Vec<Scalar> = coeffs.iter().map(|c| c * &scale).collect();
    let lead = int_coeffs.last().cloned().expect("nonzero");
    let float_coeffs: Vec<Complex64> = int_coeffs.iter().map(Scalar::to_complex).collect();
    let lead_f = lead.to_complex();

    let mut found: Vec<Scalar> = Vec::new();
    for z in complex_roots(&float_coeffs) {
        let y = lead_f * z;
        if !(y.re.is_finite() && y.im.is_finite()) {
            continue;
        }
        'cand: for re in round_half(y.re) {
            for im in round_half(y.im) {
                let cand = &Scalar::new(re.clone(), im) / &lead;
                if found.contains(&cand) {
                    break 'cand;
                }
                if eval_univariate(&int_coeffs, &cand).is_zero() {
                    found.push(cand);
                    break 'cand;
                }
            }
        }
    }
    found.sort_by(|a, b| a.lex_cmp(b));

    let vars = p.vars().clone();
    let x = MultiPoly::var(vars.clone(), v);
    let mut rest = p.clone();
    let mut roots = Vec::with_capacity(found.len());
    for rho in found {
        let lin = &x - &MultiPoly::constant(vars.clone(), rho.clone());
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            mult += 1;
        }
        roots.push((rho, mult));
    }
    UnivariateRoots {
        roots,
        residual: rest.monic(),
    }
}

/// A projective root `(a : b)` of a binary form.
pub type ProjRoot = [Scalar; 2];

#[derive(Debug, Clone)]
pub struct BinaryRoots {
    /// Exact roots, each normalized with its first nonzero coordinate equal to 1.
    pub roots: Vec<(ProjRoot, u32)>,
    /// Dehomogenized (second coordinate set to 1) monic factor for the rest.
    pub residual: MultiPoly,
    /// Number of distinct roots outside ℚ(i).
    pub residual_distinct: u32,
}

/// Roots of a binary form in the variables at `i0`, `i1`; all other variables
/// must be absent.
pub fn binary_form_roots(f: &MultiPoly, i0: usize, i1: usize) -> BinaryRoots {
    assert!(!f.is_zero());
    let d = f.total_degree().unwrap_or(0);
    let vars = f.vars().clone();
    // r(t) = f(t, 1)
    let mut images: Vec<MultiPoly> = (0..vars.len()).map(|k| MultiPoly::var(vars.clone(), k)).collect();
    images[i1] = MultiPoly::one(vars.clone());
    let r = f.compose(&images);
    let deg_r = r.degree_in(i0);
    let mut roots: Vec<(ProjRoot, u32)> = Vec::new();
    if deg_r < d {
        roots.push(([Scalar::one(), Scalar::zero()], d - deg_r));
    }
    if deg_r == 0 {
        return BinaryRoots {
            roots,
            residual: MultiPoly::one(vars),
            residual_distinct: 0,
        };
    }
    let ur = gaussian_rational_roots(&r, i0);
    let residual_distinct = ur.residual_distinct(i0);
    for (rho, m) in ur.roots {
        if rho.is_zero() {
            roots.push(([Scalar::zero(), Scalar::one()], m));
        } else {
            let inv = rho.inv().expect("nonzero");
            roots.push(([Scalar::one(), inv], m));
        }
    }
    BinaryRoots {
        roots,
        residual: ur.residual,
        residual_distinct,
    }
}

/// Float estimate for roots when exact isolation is not needed.
pub fn to_f64_coeffs(coeffs: &[Scalar]) -> Vec<Complex64> {
    coeffs.iter().map(Scalar::to_complex).collect()
}
