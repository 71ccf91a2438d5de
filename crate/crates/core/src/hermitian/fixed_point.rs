//! Fixed points of automorphisms of `(P¹)^r` of the form
//! `(ψ(x))_i = ψ_i(x_{σ(i)})`.
//!
//! On a cycle `i → σ(i) → … → σ^{k−1}(i) → i` the fixed point condition reads
//! `x_i = ψ_i ∘ ψ_{σ(i)} ∘ … ∘ ψ_{σ^{k−1}(i)}(x_i)`, so `x_i` is an
//! eigenvector of the product matrix and the other coordinates follow.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use super::su22::CMat2;
use crate::error::{Error, Result};
use crate::poly::Scalar;

/// A point of `P¹` as `(z₀ : z₁)`, unit norm with first nonzero coordinate
/// real and positive. `(1 : 0)` is the point at infinity of `z = z₀/z₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint([Complex64; 2]);

impl ProjPoint {
    pub fn new(z0: Complex64, z1: Complex64) -> Result<Self> {
        let n = (z0.norm_sqr() + z1.norm_sqr()).sqrt();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n == 0.0 {
            return Err(Error::InvalidArgument("(0 : 0) is not a point of P¹".into()));
        }
        let lead = if z0.norm() > 0.0 { z0 } else { z1 };
        let phase = lead.conj() / lead.norm();
        Ok(Self([z0 * phase / n, z1 * phase / n]))
    }

    pub fn affine(z: Complex64) -> Self {
        Self::new(z, Complex64::new(1.0, 0.0)).expect("finite affine point")
    }

    pub fn infinity() -> Self {
        Self([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
    }

    pub fn coords(&self) -> [Complex64; 2] {
        self.0
    }

    /// `z₀/z₁`, or `None` at infinity.
    pub fn to_affine(&self) -> Option<Complex64> {
        let [a, b] = self.0;
        (b.norm() > 1e-300).then(|| a / b)
    }

    pub fn is_infinity(&self, tol: f64) -> bool {
        self.0[1].norm() <= tol
    }

    fn apply(&self, m: &CMat2) -> Result<Self> {
        let [a, b] = self.0;
        Self::new(m[(0, 0)] * a + m[(0, 1)] * b, m[(1, 0)] * a + m[(1, 1)] * b)
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        let key = |p: &Self| [p.0[0].re, p.0[0].im, p.0[1].re, p.0[1].im];
        key(self)
            .iter()
            .zip(key(other).iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.0;
        write!(f, "({:.6}{:+.6}i : {:.6}{:+.6}i)", a.re, a.im, b.re, b.im)
    }
}

/// `|u₀v₁ − u₁v₀| / (‖u‖·‖v‖)`.
pub fn chordal_distance(u: &ProjPoint, v: &ProjPoint) -> f64 {
    let [a, b] = u.0;
    let [c, d] = v.0;
    (a * d - b * c).norm()
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidArgument(format!("{sigma:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Cycles of `σ` as `[i, σ(i), σ²(i), …]`, each starting at its smallest index.
pub fn cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = sigma[i];
        }
        out.push(cyc);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolydiskAutomorphism {
    /// Zero-based: `sigma[i]` is `σ(i)`.
    sigma: Vec<usize>,
    psi: Vec<CMat2>,
}

impl PolydiskAutomorphism {
    pub fn new(sigma: Vec<usize>, psi: Vec<CMat2>) -> Result<Self> {
        if sigma.is_empty() || sigma.len() != psi.len() {
            return Err(Error::InvalidArgument(format!(
                "arity mismatch: {} indices, {} matrices",
                sigma.len(),
                psi.len()
            )));
        }
        check_permutation(&sigma)?;
        for (i, m) in psi.iter().enumerate() {
            let det = m.determinant();
            if !(det.norm() > 0.0) || m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NotInvertible(format!("ψ_{} has determinant {det}", i + 1)));
            }
        }
        Ok(Self { sigma, psi })
    }

    /// `σ` given as images of `1..=r`.
    pub fn from_one_based(sigma: &[usize], psi: Vec<CMat2>) -> Result<Self> {
        let zero: Option<Vec<usize>> = sigma.iter().map(|&s| s.checked_sub(1)).collect();
        let zero = zero.ok_or_else(|| Error::InvalidArgument("σ uses 1-based indices".into()))?;
        Self::new(zero, psi)
    }

    pub fn arity(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn psi(&self) -> &[CMat2] {
        &self.psi
    }

    pub fn apply(&self, x: &[ProjPoint]) -> Result<Vec<ProjPoint>> {
        if x.len() != self.arity() {
            return Err(Error::InvalidArgument("point has the wrong arity".into()));
        }
        (0..self.arity()).map(|i| x[self.sigma[i]].apply(&self.psi[i])).collect()
    }

    /// Largest per-coordinate chordal distance between `x` and `a(x)`.
    pub fn residual(&self, x: &[ProjPoint]) -> Result<f64> {
        let y = self.apply(x)?;
        Ok(x.iter().zip(&y).map(|(u, v)| chordal_distance(u, v)).fold(0.0, f64::max))
    }
}

/// Which eigenvalue of a cycle product anchors the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenChoice {
    #[default]
    LargerModulus,
    SmallerModulus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub coords: Vec<ProjPoint>,
    pub residual: f64,
    /// Eigenvalue chosen for each cycle (cycles ordered by smallest index).
    pub eigenvalues: Vec<Complex64>,
}

fn eigenvectors(m: &CMat2) -> Vec<(Complex64, ProjPoint)> {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let half_tr = (a + d) * 0.5;
    let disc = (half_tr * half_tr - (a * d - b * c)).sqrt();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut out = Vec::new();
    for lam in [half_tr + disc, half_tr - disc] {
        // Rows of M − λ give two candidate kernel vectors; keep the better one.
        let v1 = (b, lam - a);
        let v2 = (lam - d, c);
        let n1 = v1.0.norm() + v1.1.norm();
        let n2 = v2.0.norm() + v2.1.norm();
        if n1.max(n2) <= 1e-14 * scale {
            // Scalar matrix: every point is fixed.
            out.push((lam, ProjPoint::infinity()));
        } else {
            let v = if n1 >= n2 { v1 } else { v2 };
            out.push((lam, ProjPoint::new(v.0, v.1).expect("nonzero eigenvector")));
        }
    }
    out
}

fn choose(m: &CMat2, choice: EigenChoice) -> (Complex64, ProjPoint) {
    let mut ev = eigenvectors(m);
    let (n0, n1) = (ev[0].0.norm(), ev[1].0.norm());
    let tie = (n0 - n1).abs() <= 1e-12 * n0.max(n1);
    let first_wins = if tie {
        ev[0].1.lex_cmp(&ev[1].1).is_ge()
    } else {
        match choice {
            EigenChoice::LargerModulus => n0 > n1,
            EigenChoice::SmallerModulus => n0 < n1,
        }
    };
    if first_wins {
        ev.swap_remove(0)
    } else {
        ev.swap_remove(1)
    }
}

/// A fixed point of `a`, anchoring every cycle at the eigenvector of the
/// larger-modulus eigenvalue.
pub fn polydisk_fixed_point(a: &PolydiskAutomorphism) -> FixedPoint {
    polydisk_fixed_point_with(a, EigenChoice::LargerModulus, 0)
}

/// As [`polydisk_fixed_point`], anchoring each cycle at its element
/// `offset` steps after the smallest index.
pub fn polydisk_fixed_point_with(a: &PolydiskAutomorphism, choice: EigenChoice, offset: usize) -> FixedPoint {
    let r = a.arity();
    let mut coords = vec![ProjPoint::infinity(); r];
    let mut eigenvalues = Vec::new();
    for mut cyc in cycles(&a.sigma) {
        let len = cyc.len();
        cyc.rotate_left(offset % len);
        let product = cyc.iter().fold(CMat2::identity(), |acc, &i| acc * a.psi[i]);
        let (lam, anchor) = choose(&product, choice);
        eigenvalues.push(lam);
        coords[cyc[0]] = anchor;
        // x_j = ψ_j(x_{σ(j)}), walking the cycle backwards from the anchor.
        for k in (1..len).rev() {
            let j = cyc[k];
            let next = coords[a.sigma[j]];
            coords[j] = next.apply(&a.psi[j]).expect("ψ_j is invertible");
        }
    }
    let residual = a.residual(&coords).expect("arity matches");
    FixedPoint {
        coords,
        residual,
        eigenvalues,
    }
}

pub type ExactMat2 = [[Scalar; 2]; 2];

fn exact_mul(p: &ExactMat2, q: &ExactMat2) -> ExactMat2 {
    let e = |i: usize, j: usize| &(&p[i][0] * &q[0][j]) + &(&p[i][1] * &q[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn exact_apply(m: &ExactMat2, x: &[Scalar; 2]) -> [Scalar; 2] {
    let p = [
        &(&m[0][0] * &x[0]) + &(&m[0][1] * &x[1]),
        &(&m[1][0] * &x[0]) + &(&m[1][1] * &x[1]),
    ];
    normalize_exact(p)
}

/// Scales to `(1 : 0)` or `(z : 1)`.
fn normalize_exact(p: [Scalar; 2]) -> [Scalar; 2] {
    match p[1].inv() {
        Some(inv) => [&p[0] * &inv, Scalar::one()],
        None => [Scalar::one(), Scalar::zero()],
    }
}

/// Exact counterpart of [`polydisk_fixed_point_with`] over `ℚ(i)`. Returns
/// `None` when a cycle product has eigenvalues outside `ℚ(i)`.
pub fn exact_fixed_point(
    sigma: &[usize],
    psi: &[ExactMat2],
    choice: EigenChoice,
) -> Result<Option<Vec<[Scalar; 2]>>> {
    if sigma.len() != psi.len() || sigma.is_empty() {
        return Err(Error::InvalidArgument("arity mismatch".into()));
    }
    check_permutation(sigma)?;
    for (i, m) in psi.iter().enumerate() {
        if (&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])).is_zero() {
            return Err(Error::NotInvertible(format!("ψ_{} is singular", i + 1)));
        }
    }
    let mut coords = vec![[Scalar::one(), Scalar::zero()]; sigma.len()];
    for cyc in cycles(sigma) {
        let one = [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]];
        let m = cyc.iter().fold(one, |acc, &i| exact_mul(&acc, &psi[i]));
        let half = Scalar::ratio(1, 2);
        let half_tr = &(&m[0][0] + &m[1][1]) * &half;
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        let Some(root) = (&(&half_tr * &half_tr) - &det).sqrt() else {
            return Ok(None);
        };
        let l0 = &half_tr + &root;
        let l1 = &half_tr - &root;
        let vec_for = |lam: &Scalar| -> [Scalar; 2] {
            let v1 = [m[0][1].clone(), lam - &m[0][0]];
            if !(v1[0].is_zero() && v1[1].is_zero()) {
                return normalize_exact(v1);
            }
            let v2 = [lam - &m[1][1], m[1][0].clone()];
            if !(v2[0].is_zero() && v2[1].is_zero()) {
                return normalize_exact(v2);
            }
            [Scalar::one(), Scalar::zero()]
        };
        let (n0, n1) = (l0.norm_sqr(), l1.norm_sqr());
        let lam = match n0.cmp(&n1) {
            Ordering::Equal => {
                let (v0, v1) = (vec_for(&l0), vec_for(&l1));
                let fl = |v: &[Scalar; 2]| ProjPoint::new(v[0].to_complex(), v[1].to_complex()).unwrap();
                if fl(&v0).lex_cmp(&fl(&v1)).is_ge() {
                    l0
                } else {
                    l1
                }
            }
            o => match (o, choice) {
                (Ordering::Greater, EigenChoice::LargerModulus) | (Ordering::Less, EigenChoice::SmallerModulus) => l0,
                _ => l1,
            },
        };
        coords[cyc[0]] = vec_for(&lam);
        for k in (1..cyc.len()).rev() {
            let j = cyc[k];
            coords[j] = exact_apply(&psi[j], &coords[sigma[j]]);
        }
    }
    Ok(Some(coords))
}
