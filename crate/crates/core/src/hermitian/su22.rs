use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMat2 = Matrix2<Complex64>;
pub type CMat4 = Matrix4<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Reciprocal condition number below which `CZ + D` is treated as singular.
const RCOND_FLOOR: f64 = 1e-12;

pub fn max_norm<const R: usize, const C: usize>(
    m: &nalgebra::SMatrix<Complex64, R, C>,
) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn blocks(g: &CMat4) -> [CMat2; 4] {
    [
        g.fixed_view::<2, 2>(0, 0).into_owned(),
        g.fixed_view::<2, 2>(0, 2).into_owned(),
        g.fixed_view::<2, 2>(2, 0).into_owned(),
        g.fixed_view::<2, 2>(2, 2).into_owned(),
    ]
}

fn assemble(a: &CMat2, b: &CMat2, c: &CMat2, d: &CMat2) -> CMat4 {
    let mut g = CMat4::zeros();
    g.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    g.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    g.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    g.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    g
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su22Check {
    pub valid: bool,
    /// Max-norm deviations of `A*A − C*C = I`, `B*B − D*D = −I`, `B*A − D*C = 0`.
    pub residuals: [f64; 3],
    pub det_residual: f64,
}

/// Checks the relations `g* J g = J` for `J = diag(I, −I)` blockwise, plus `det g = 1`.
pub fn check_su22(a: &CMat2, b: &CMat2, c: &CMat2, d: &CMat2, tol: f64) -> Su22Check {
    let id = CMat2::identity();
    let r1 = max_norm(&(a.adjoint() * a - c.adjoint() * c - id));
    let r2 = max_norm(&(b.adjoint() * b - d.adjoint() * d + id));
    let r3 = max_norm(&(b.adjoint() * a - d.adjoint() * c));
    let det_residual = (assemble(a, b, c, d).determinant() - c_one()).norm();
    Su22Check {
        valid: r1 <= tol && r2 <= tol && r3 <= tol && det_residual <= tol,
        residuals: [r1, r2, r3],
        det_residual,
    }
}

fn c_one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// An element of SU(2,2) in 2×2 block form `[[A, B], [C, D]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Su22Element {
    pub a: CMat2,
    pub b: CMat2,
    pub c: CMat2,
    pub d: CMat2,
}

impl Su22Element {
    pub fn new(a: CMat2, b: CMat2, c: CMat2, d: CMat2, tol: f64) -> Result<Self> {
        let chk = check_su22(&a, &b, &c, &d, tol);
        if !chk.valid {
            return Err(Error::Precondition(format!(
                "not in SU(2,2): residuals {:?}, |det − 1| = {:.3e}",
                chk.residuals, chk.det_residual
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: CMat2::identity(),
            b: CMat2::zeros(),
            c: CMat2::zeros(),
            d: CMat2::identity(),
        }
    }

    /// `A = D = diag(cosh t, 1)`, `B = C = diag(sinh t, 0)`.
    pub fn boost(t: f64) -> Self {
        let a = CMat2::new(c(t.cosh()), c(0.0), c(0.0), c(1.0));
        let b = CMat2::new(c(t.sinh()), c(0.0), c(0.0), c(0.0));
        Self {
            a,
            b,
            c: b,
            d: a,
        }
    }

    pub fn from_matrix(g: &CMat4) -> Self {
        let [a, b, c, d] = blocks(g);
        Self { a, b, c, d }
    }

    pub fn to_matrix(&self) -> CMat4 {
        assemble(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn check(&self, tol: f64) -> Su22Check {
        check_su22(&self.a, &self.b, &self.c, &self.d, tol)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix(&(self.to_matrix() * other.to_matrix()))
    }

    /// Exponential of a random element of su(2,2): skew-Hermitian diagonal
    /// blocks and an off-diagonal block `[[0, X], [X*, 0]]`, with entries
    /// of standard deviation `scale`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        Self::random_with(rng, scale, true)
    }

    /// Random element of the isotropy group `S(U(2)×U(2))` of the origin.
    pub fn random_isotropy<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        Self::random_with(rng, scale, false)
    }

    fn random_with<R: Rng + ?Sized>(rng: &mut R, scale: f64, off_diagonal: bool) -> Self {
        let mut gauss = || -> Complex64 {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * scale
        };
        let mut skew = || {
            let h = CMat2::from_fn(|_, _| gauss());
            (h - h.adjoint()) * c(0.5)
        };
        let k1 = skew();
        let k2 = skew();
        let x = if off_diagonal {
            CMat2::from_fn(|_, _| gauss())
        } else {
            CMat2::zeros()
        };
        let mut alg = assemble(&k1, &x, &x.adjoint(), &k2);
        let shift = alg.trace() / c(4.0);
        for i in 0..4 {
            alg[(i, i)] -= shift;
        }
        Self::from_matrix(&alg.exp())
    }
}

/// A point of `{Z : Id − ᵗZ·Z̄ > 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiegelPoint {
    z: CMat2,
}

/// Smallest eigenvalue of the Hermitian form `Id − ᵗZ·Z̄`.
pub fn domain_margin(z: &CMat2) -> f64 {
    let h = CMat2::identity() - z.transpose() * z.map(|w| w.conj());
    let half_tr = 0.5 * (h[(0, 0)].re + h[(1, 1)].re);
    let det = h[(0, 0)].re * h[(1, 1)].re - h[(0, 1)].norm_sqr();
    half_tr - (half_tr * half_tr - det).max(0.0).sqrt()
}

impl SiegelPoint {
    pub fn new(z: CMat2) -> Result<Self> {
        Self::with_margin(z, DEFAULT_TOLERANCE)
    }

    pub fn with_margin(z: CMat2, tol: f64) -> Result<Self> {
        if z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let m = domain_margin(&z);
        if m <= tol {
            return Err(Error::Precondition(format!(
                "Id − ᵗZ·Z̄ has eigenvalue {m:.3e} ≤ {tol:.1e}"
            )));
        }
        Ok(Self { z })
    }

    pub fn origin() -> Self {
        Self { z: CMat2::zeros() }
    }

    pub fn matrix(&self) -> &CMat2 {
        &self.z
    }

    pub fn margin(&self) -> f64 {
        domain_margin(&self.z)
    }

    /// Random point with operator norm uniform in `[0, radius)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self {
        let m = CMat2::from_fn(|_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let norm = m.singular_values().max().max(f64::MIN_POSITIVE);
        let r: f64 = rng.random_range(0.0..radius);
        Self {
            z: m * c(r / norm),
        }
    }
}

fn checked_inverse(m: &CMat2) -> Result<CMat2> {
    let sv = m.singular_values();
    let (hi, lo) = (sv[0].max(sv[1]), sv[0].min(sv[1]));
    if !(lo > RCOND_FLOOR * hi) {
        return Err(Error::NearSingular(if lo > 0.0 { hi / lo } else { f64::INFINITY }));
    }
    m.try_inverse()
        .ok_or(Error::NearSingular(f64::INFINITY))
}

fn act_matrix(g: &Su22Element, z: &CMat2) -> Result<CMat2> {
    let q = checked_inverse(&(g.c * z + g.d))?;
    Ok((g.a * z + g.b) * q)
}

/// `Z ↦ (AZ + B)(CZ + D)⁻¹`.
pub fn moebius_action(g: &Su22Element, z: &SiegelPoint) -> Result<SiegelPoint> {
    let w = act_matrix(g, &z.z)?;
    // Only strict positivity is required of the image: points near the
    // boundary stay near it.
    SiegelPoint::with_margin(w, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiInvariance {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// `det(A Z D⁻¹)` against `det(A)²·det(Z)` for `(A, D)` in `S(U(2)×U(2))`.
pub fn holonomy_semiinvariance(a: &CMat2, d: &CMat2, z: &CMat2, tol: f64) -> Result<SemiInvariance> {
    let id = CMat2::identity();
    let ua = max_norm(&(a.adjoint() * a - id));
    let ud = max_norm(&(d.adjoint() * d - id));
    let dd = (a.determinant() * d.determinant() - c_one()).norm();
    if ua > tol || ud > tol || dd > tol {
        return Err(Error::Precondition(format!(
            "unitarity residuals {ua:.3e}, {ud:.3e}; |det A·det D − 1| = {dd:.3e}"
        )));
    }
    let d_inv = checked_inverse(d)?;
    let lhs = (a * z * d_inv).determinant();
    let rhs = a.determinant().powu(2) * z.determinant();
    Ok(SemiInvariance {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
    })
}

/// Matrix of `X ↦ P·X·Q` on column-major `vec(X)`, i.e. `Qᵗ ⊗ P`.
pub fn induced_matrix(p: &CMat2, q: &CMat2) -> CMat4 {
    CMat4::from_fn(|r, col| q[(col / 2, r / 2)] * p[(r % 2, col % 2)])
}

/// Returns `(det4, det(P)²·det(Q)²)`.
pub fn quartic_invariance_factor(p: &CMat2, q: &CMat2) -> (Complex64, Complex64) {
    let det4 = induced_matrix(p, q).determinant();
    let predicted = (p.determinant() * q.determinant()).powu(2);
    (det4, predicted)
}

pub fn relative_gap(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    /// Determinant of `dZ ↦ P·dZ·Q`, the complex Jacobian of `Z ↦ W`.
    pub jacobian_det: Complex64,
    /// Pullback factor `det(P)²·det(Q)²` of `det(dZ)²`.
    pub pullback_factor: Complex64,
    /// Central finite-difference Jacobian determinant.
    pub fd_jacobian_det: Complex64,
    pub det_p: Complex64,
    pub det_q: Complex64,
    pub algebraic_residual: f64,
    pub fd_residual: f64,
    /// `max(algebraic_residual, fd_residual)`.
    pub residual: f64,
    pub within_tol: bool,
}

pub const FD_STEP: f64 = 1e-6;

/// Compares the pullback factor of `det(dZ)²` under `Z ↦ W = g·Z` with the
/// Jacobian determinant of the map, using `dW = P·dZ·Q` with
/// `P = A − W·C`, `Q = (CZ + D)⁻¹`.
pub fn tensor_invariance_check(g: &Su22Element, z: &SiegelPoint, tol: f64) -> Result<InvarianceReport> {
    let zm = z.z;
    let q = checked_inverse(&(g.c * zm + g.d))?;
    let w = (g.a * zm + g.b) * q;
    let p = g.a - w * g.c;
    let (jacobian_det, pullback_factor) = quartic_invariance_factor(&p, &q);

    let mut jac = CMat4::zeros();
    for k in 0..4 {
        let mut e = CMat2::zeros();
        e[(k % 2, k / 2)] = c(FD_STEP);
        let diff = (act_matrix(g, &(zm + e))? - act_matrix(g, &(zm - e))?) * c(0.5 / FD_STEP);
        for r in 0..4 {
            jac[(r, k)] = diff[(r % 2, r / 2)];
        }
    }
    let fd_jacobian_det = jac.determinant();

    let algebraic_residual = relative_gap(jacobian_det, pullback_factor);
    let fd_residual = relative_gap(fd_jacobian_det, pullback_factor);
    let residual = algebraic_residual.max(fd_residual);
    Ok(InvarianceReport {
        jacobian_det,
        pullback_factor,
        fd_jacobian_det,
        det_p: p.determinant(),
        det_q: q.determinant(),
        algebraic_residual,
        fd_residual,
        residual,
        within_tol: residual <= tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockDeterminantIdentity {
    /// `det(C)·det(A C⁻¹ D − B)`.
    pub lhs: Complex64,
    pub det_g: Complex64,
    pub det_a_det_d: Complex64,
}

/// Evaluates `det(C)·det(AC⁻¹D − B)`, which is `det g` by the block
/// determinant formula. Returns `None` when `C` is ill-conditioned.
pub fn block_determinant_identity(g: &Su22Element) -> Option<BlockDeterminantIdentity> {
    let sv = g.c.singular_values();
    if sv[0].min(sv[1]) < 1e-6 * sv[0].max(sv[1]).max(1.0) {
        return None;
    }
    let c_inv = g.c.try_inverse()?;
    Some(BlockDeterminantIdentity {
        lhs: g.c.determinant() * (g.a * c_inv * g.d - g.b).determinant(),
        det_g: g.to_matrix().determinant(),
        det_a_det_d: g.a.determinant() * g.d.determinant(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(a: f64, b: f64) -> CMat2 {
        CMat2::new(c(a), c(0.0), c(0.0), c(b))
    }

    #[test]
    fn su22_examples() {
        let id = Su22Element::identity();
        let chk = id.check(1e-12);
        assert!(chk.valid);
        assert_eq!(chk.residuals, [0.0; 3]);
        assert!(Su22Element::boost(0.7).check(1e-12).valid);
        let chk = check_su22(&diag(2.0, 2.0), &CMat2::zeros(), &CMat2::zeros(), &CMat2::zeros(), 1e-9);
        assert!(!chk.valid);
        assert_eq!(chk.residuals[0], 3.0);
    }

    #[test]
    fn boost_moves_origin() {
        let t = 0.7;
        let w = moebius_action(&Su22Element::boost(t), &SiegelPoint::origin()).unwrap();
        assert!(max_norm(&(w.matrix() - diag(t.tanh(), 0.0))) < 1e-15);
    }

    #[test]
    fn random_elements_satisfy_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = Su22Element::random(&mut rng, 0.5);
            let chk = g.check(1e-9);
            assert!(chk.valid, "{chk:?}");
        }
    }

    #[test]
    fn semiinvariance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let z = *SiegelPoint::random(&mut rng, 0.9).matrix();
        let th = 0.3;
        let e = Complex64::from_polar(1.0, th);
        let s = holonomy_semiinvariance(&(CMat2::identity() * e), &(CMat2::identity() * e.conj()), &z, 1e-12)
            .unwrap();
        assert!((s.lhs - Complex64::from_polar(1.0, 4.0 * th) * z.determinant()).norm() < 1e-14);
        assert!(s.residual < 1e-14);
        let i = Complex64::i();
        let a = CMat2::new(i, c(0.0), c(0.0), -i);
        let s = holonomy_semiinvariance(&a, &CMat2::identity(), &z, 1e-12).unwrap();
        assert!(s.residual < 1e-12);
        assert!(holonomy_semiinvariance(&diag(2.0, 1.0), &diag(0.5, 1.0), &z, 1e-9).is_err());
    }

    #[test]
    fn quartic_factor_examples() {
        let (d4, p) = quartic_invariance_factor(&CMat2::identity(), &CMat2::identity());
        assert_eq!((d4, p), (c_one(), c_one()));
        let (d4, p) = quartic_invariance_factor(&diag(2.0, 1.0), &CMat2::identity());
        assert!((d4 - c(4.0)).norm() < 1e-14 && (p - c(4.0)).norm() < 1e-14);
    }

    #[test]
    fn induced_matrix_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = *SiegelPoint::random(&mut rng, 2.0).matrix();
        let q = *SiegelPoint::random(&mut rng, 2.0).matrix();
        let x = *SiegelPoint::random(&mut rng, 2.0).matrix();
        let direct = p * x * q;
        let m = induced_matrix(&p, &q);
        let vx = nalgebra::Vector4::new(x[(0, 0)], x[(1, 0)], x[(0, 1)], x[(1, 1)]);
        let v = m * vx;
        for k in 0..4 {
            assert!((v[k] - direct[(k % 2, k / 2)]).norm() < 1e-13);
        }
    }

    #[test]
    fn invariance_identity_and_boost() {
        let r = tensor_invariance_check(&Su22Element::identity(), &SiegelPoint::origin(), 1e-9).unwrap();
        assert_eq!(r.algebraic_residual, 0.0);
        assert!(r.fd_residual < 1e-9);
        let r = tensor_invariance_check(&Su22Element::boost(0.7), &SiegelPoint::origin(), 1e-9).unwrap();
        assert!(r.within_tol, "{r:?}");
        assert!((r.det_p - r.det_q).norm() < 1e-12);
    }

    #[test]
    fn block_determinant_is_det_g() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = 0;
        for _ in 0..40 {
            let g = Su22Element::random(&mut rng, 0.8);
            if let Some(id) = block_determinant_identity(&g) {
                seen += 1;
                assert!((id.lhs - id.det_g).norm() < 1e-8);
                assert!((id.det_g - c_one()).norm() < 1e-9);
            }
        }
        assert!(seen > 10);
        // det A·det D is not 1 off the isotropy subgroup.
        let g = Su22Element::boost(0.7);
        assert!((g.a.determinant() * g.d.determinant() - c_one()).norm() > 0.5);
    }
}
