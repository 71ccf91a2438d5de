//! Floating-point classification with an explicit zero tolerance.
//!
//! Singular points are found by intersecting two random combinations of the
//! partials in random unitary coordinates, refining with Gauss–Newton on
//! `∇F = 0` and keeping the points whose residual is below the tolerance.
//! Quantities that land between the tolerance and a looser acceptance band
//! raise [`Error::Ambiguous`].

use nalgebra::{Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::roots::complex_roots;
use crate::poly::MultiPoly;

use super::{Classification, CubicClass, LineComponent, PlaneCubic, PointCoords, PointKind, SingularLocus, SingularPoint};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Residuals in `(tol, AMBIGUITY_BAND·tol]` are reported as ambiguous.
pub const AMBIGUITY_BAND: f64 = 1e3;

/// Largest starting residual worth refining.
const SEED_GATE: f64 = 1e-3;

type C = Complex64;

struct Numeric {
    f: MultiPoly,
    grads: Vec<MultiPoly>,
    hess: Vec<Vec<MultiPoly>>,
    scale: f64,
    tol: f64,
}

impl Numeric {
    fn new(c: &PlaneCubic, tol: f64) -> Self {
        let f = c.poly().clone();
        let grads = f.partials();
        let hess = grads.iter().map(|g| g.partials()).collect();
        let scale = f
            .terms()
            .map(|(_, s)| s.to_complex().norm())
            .fold(0.0, f64::max);
        Self {
            f,
            grads,
            hess,
            scale,
            tol,
        }
    }

    fn grad(&self, x: &[C; 3]) -> [C; 3] {
        std::array::from_fn(|i| self.grads[i].eval_complex(x))
    }

    fn hessian(&self, x: &[C; 3]) -> Matrix3<C> {
        Matrix3::from_fn(|i, j| self.hess[i][j].eval_complex(x))
    }

    /// Zero / nonzero / ambiguous decision for a relative quantity, where the
    /// zero band is `≤ lo` and the nonzero band is `> hi`.
    fn decide(&self, value: f64, lo: f64, hi: f64, what: &str) -> Result<bool> {
        if value <= lo {
            Ok(true)
        } else if value > hi {
            Ok(false)
        } else {
            Err(Error::Ambiguous(format!("{what} = {value:.3e} lies between {lo:.1e} and {hi:.1e}")))
        }
    }
}

fn random_unitary(seed: u64) -> Matrix3<C> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = Matrix3::from_fn(|_, _| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    m.qr().q()
}

fn apply(u: &Matrix3<C>, y: &[C; 3]) -> [C; 3] {
    let v = u * Vector3::new(y[0], y[1], y[2]);
    [v[0], v[1], v[2]]
}

fn normalize(x: [C; 3]) -> [C; 3] {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let big = x
        .iter()
        .copied()
        .fold(C::new(0.0, 0.0), |acc, z| if z.norm() > acc.norm() * (1.0 + 1e-12) { z } else { acc });
    let phase = big / big.norm();
    x.map(|z| z / (phase * norm))
}

/// Chordal distance between two points of P².
fn chordal(a: &[C; 3], b: &[C; 3]) -> f64 {
    let na: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let inner: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let c = (inner.norm() / (na * nb)).min(1.0);
    (1.0 - c * c).max(0.0).sqrt()
}

/// Coefficients `(c0, c1, c2)` of the quadratic `s ↦ g(s)`.
fn quadratic_coeffs(g: impl Fn(C) -> C) -> [C; 3] {
    let one = C::new(1.0, 0.0);
    let q0 = g(C::new(0.0, 0.0));
    let q1 = g(one);
    let qm = g(-one);
    let c2 = (q1 + qm) / 2.0 - q0;
    let c1 = (q1 - qm) / 2.0;
    [q0, c1, c2]
}

fn sylvester_2_2(a: &[C; 3], b: &[C; 3]) -> C {
    let z = C::new(0.0, 0.0);
    Matrix4::new(
        a[2], a[1], a[0], z, //
        z, a[2], a[1], a[0], //
        b[2], b[1], b[0], z, //
        z, b[2], b[1], b[0],
    )
    .determinant()
}

fn chordal1(a: C, b: C) -> f64 {
    (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
}

fn root_gap(qa: &[C; 3], qb: &[C; 3]) -> f64 {
    let ra = complex_roots(qa);
    let rb = complex_roots(qb);
    let mut best = 1.0f64;
    for x in &ra {
        for y in &rb {
            best = best.min(chordal1(*x, *y));
        }
    }
    best
}

/// Gauss–Newton on `∇F(x) = 0` in the affine chart of the largest coordinate.
fn refine(num: &Numeric, x0: [C; 3]) -> [C; 3] {
    let mut x = normalize(x0);
    for _ in 0..200 {
        let j = (0..3)
            .max_by(|&a, &b| x[a].norm().partial_cmp(&x[b].norm()).expect("finite"))
            .expect("three coordinates");
        let pivot = x[j];
        x = x.map(|z| z / pivot);
        let free: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let g = num.grad(&x);
        let h = num.hessian(&x);
        // Least squares for the 3×2 system J·d = −g.
        let jac: Vec<[C; 2]> = (0..3).map(|r| [h[(r, free[0])], h[(r, free[1])]]).collect();
        let mut n = [[C::new(0.0, 0.0); 2]; 2];
        let mut rhs = [C::new(0.0, 0.0); 2];
        for r in 0..3 {
            for a in 0..2 {
                rhs[a] -= jac[r][a].conj() * g[r];
                for b in 0..2 {
                    n[a][b] += jac[r][a].conj() * jac[r][b];
                }
            }
        }
        let det = n[0][0] * n[1][1] - n[0][1] * n[1][0];
        let trace = n[0][0].norm() + n[1][1].norm();
        let (d0, d1) = if det.norm() > 1e-24 * trace * trace.max(1e-300) {
            (
                (rhs[0] * n[1][1] - rhs[1] * n[0][1]) / det,
                (n[0][0] * rhs[1] - n[1][0] * rhs[0]) / det,
            )
        } else if trace > 0.0 {
            // Rank-deficient normal matrix: steepest descent step along the
            // dominant direction.
            let k = if n[0][0].norm() >= n[1][1].norm() { 0 } else { 1 };
            let step = rhs[k] / n[k][k];
            if k == 0 {
                (step, C::new(0.0, 0.0))
            } else {
                (C::new(0.0, 0.0), step)
            }
        } else {
            break;
        };
        if !(d0.re.is_finite() && d0.im.is_finite() && d1.re.is_finite() && d1.im.is_finite()) {
            break;
        }
        x[free[0]] += d0;
        x[free[1]] += d1;
        if d0.norm().max(d1.norm()) < 1e-16 {
            break;
        }
    }
    normalize(x)
}

fn residual(num: &Numeric, x: &[C; 3]) -> f64 {
    let g = num.grad(x);
    g.iter().map(|z| z.norm()).fold(0.0, f64::max) / num.scale
}

struct Projection {
    u: Matrix3<C>,
    quartic: Vec<C>,
    /// Largest, over the sampled fibres, of the smallest chordal distance
    /// between a root of one combination and a root of the other; zero
    /// exactly when the singular locus is a curve.
    common_root_gap: f64,
    a: [C; 3],
}

fn project(num: &Numeric, seed: u64) -> Projection {
    let u = random_unitary(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut combo = || -> [C; 3] {
        let v: [C; 3] = std::array::from_fn(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.map(|z| z / n)
    };
    let a = combo();
    let b = combo();
    let eval_combo = |w: &[C; 3], x: &[C; 3]| -> C {
        let g = num.grad(x);
        (0..3).map(|i| w[i] * g[i]).sum()
    };
    let samples = 8;
    let mut values = Vec::with_capacity(samples);
    let mut common_root_gap: f64 = 0.0;
    for k in 0..samples {
        let t = C::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / samples as f64);
        let qa = quadratic_coeffs(|s| eval_combo(&a, &apply(&u, &[t, C::new(1.0, 0.0), s])));
        let qb = quadratic_coeffs(|s| eval_combo(&b, &apply(&u, &[t, C::new(1.0, 0.0), s])));
        common_root_gap = common_root_gap.max(root_gap(&qa, &qb));
        values.push(sylvester_2_2(&qa, &qb));
    }
    // Discrete Fourier transform recovers the coefficients of the quartic.
    let quartic: Vec<C> = (0..=4)
        .map(|d| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * C::from_polar(1.0, -2.0 * std::f64::consts::PI * (k * d) as f64 / samples as f64))
                .sum::<C>()
                / samples as f64
        })
        .collect();
    Projection {
        u,
        quartic,
        common_root_gap,
        a,
    }
}

fn one_dimensional(num: &Numeric) -> Result<Classification> {
    // All second partials are multiples of one linear form exactly for a
    // triple line; a double line plus a line spans two.
    let mut rows: Vec<[C; 3]> = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let h = &num.hess[i][j];
            let coeffs: [C; 3] = std::array::from_fn(|k| {
                let mut e = [0u32; 3];
                e[k] = 1;
                h.coefficient(&e).to_complex()
            });
            rows.push(coeffs);
        }
    }
    let m = nalgebra::DMatrix::from_fn(rows.len(), 3, |r, c| rows[r][c]);
    let sv = m.singular_values();
    let rel = sv[1] / sv[0].max(f64::MIN_POSITIVE);
    let triple = num.decide(rel, num.tol.sqrt(), num.tol.cbrt(), "second singular value of the Hessian span")?;
    let (class, lines) = if triple {
        (
            CubicClass::TripleLine,
            vec![LineComponent {
                form: None,
                multiplicity: 3,
            }],
        )
    } else {
        (
            CubicClass::DoubleLinePlusLine,
            vec![
                LineComponent {
                    form: None,
                    multiplicity: 2,
                },
                LineComponent {
                    form: None,
                    multiplicity: 1,
                },
            ],
        )
    };
    Ok(Classification {
        class,
        singular: SingularLocus::OneDimensional { line: None },
        lines,
        line_conic_intersections: None,
    })
}

fn hessian_rank(num: &Numeric, x: &[C; 3]) -> Result<(u32, Matrix3<C>)> {
    let h = num.hessian(x);
    let sv = h.singular_values();
    let mut rank = 0;
    for k in 0..3 {
        let zero = num.decide(sv[k] / num.scale, num.tol.sqrt(), num.tol.cbrt(), "Hessian singular value")?;
        if !zero {
            rank += 1;
        }
    }
    Ok((rank, h))
}

fn vanishes_on_line(num: &Numeric, v: &[C; 3]) -> Result<bool> {
    let j = (0..3)
        .max_by(|&a, &b| v[a].norm().partial_cmp(&v[b].norm()).expect("finite"))
        .expect("three entries");
    let basis: Vec<[C; 3]> = (0..3)
        .filter(|&k| k != j)
        .map(|k| {
            let mut p = [C::new(0.0, 0.0); 3];
            p[k] = v[j];
            p[j] = -v[k];
            normalize(p)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for k in 0..8 {
        let (s, c) = (0.7 * k as f64 + 0.3).sin_cos();
        let x: [C; 3] = std::array::from_fn(|i| basis[0][i] * c + basis[1][i] * s);
        worst = worst.max(num.f.eval_complex(&normalize(x)).norm() / num.scale);
    }
    num.decide(worst, num.tol.sqrt(), num.tol.cbrt(), "cubic restricted to the tangent line")
}

/// Classification in floating point with zero tolerance `tol`.
pub fn classify_float(c: &PlaneCubic, tol: f64) -> Result<Classification> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must lie in (0, 1)")));
    }
    let num = Numeric::new(c, tol);
    let mut proj = project(&num, 0xC0B1C);
    for attempt in 1..4 {
        let lead = proj.quartic[4].norm();
        let size = proj.quartic.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if proj.common_root_gap <= tol.cbrt() || lead > 1e-6 * size {
            break;
        }
        proj = project(&num, 0xC0B1C + attempt);
    }
    if num.decide(proj.common_root_gap, tol.sqrt(), tol.cbrt(), "common-root gap of the partials")? {
        return one_dimensional(&num);
    }

    let mut found: Vec<[C; 3]> = Vec::new();
    let mut t_roots = complex_roots(&proj.quartic);
    // Average clustered roots: the mean of a perturbed multiple root is far
    // more accurate than any single member.
    t_roots.sort_by(|a, b| a.re.partial_cmp(&b.re).expect("finite"));
    let mut clusters: Vec<Vec<C>> = Vec::new();
    for t in t_roots {
        match clusters.iter_mut().find(|cl| (cl[0] - t).norm() < 1e-3 * (1.0 + t.norm())) {
            Some(cl) => cl.push(t),
            None => clusters.push(vec![t]),
        }
    }
    for cl in clusters {
        let t = cl.iter().sum::<C>() / cl.len() as f64;
        // Candidate fibre points: roots of the first combination in s.
        let qa = quadratic_coeffs(|s| {
            let g = num.grad(&apply(&proj.u, &[t, C::new(1.0, 0.0), s]));
            (0..3).map(|i| proj.a[i] * g[i]).sum()
        });
        let mut cands: Vec<C> = complex_roots(&qa);
        if cands.is_empty() {
            cands.push(C::new(0.0, 0.0));
        }
        for s in cands {
            let start = normalize(apply(&proj.u, &[t, C::new(1.0, 0.0), s]));
            // Intersections of the two combinations away from the singular
            // set have a residual of order one; refining them only finds
            // spurious local minima of |∇F|.
            if residual(&num, &start) > SEED_GATE {
                continue;
            }
            let x = refine(&num, start);
            let rho = residual(&num, &x);
            if num.decide(rho, tol, AMBIGUITY_BAND * tol, "singular-point residual")?
                && !found.iter().any(|p| chordal(p, &x) < tol.sqrt().max(1e-6))
            {
                found.push(x);
            }
        }
    }

    let mut points = Vec::new();
    let mut hessians = Vec::new();
    for x in &found {
        let (rank, h) = hessian_rank(&num, x)?;
        let kind = match rank {
            0 => PointKind::HigherMultiplicity,
            1 => PointKind::Cusp,
            _ => PointKind::Node,
        };
        points.push(SingularPoint {
            coords: PointCoords::Approx(*x),
            kind,
            tangent_cone: None,
        });
        hessians.push(h);
    }
    let unknown = |m: u32| LineComponent {
        form: None,
        multiplicity: m,
    };
    let (class, lines, meets) = match points.len() {
        0 => (CubicClass::SmoothIrreducible, vec![], None),
        1 => match points[0].kind {
            PointKind::Node => (CubicClass::IrreducibleNodal, vec![], None),
            PointKind::HigherMultiplicity => (CubicClass::ThreeConcurrentLines, vec![unknown(1); 3], None),
            PointKind::Cusp => {
                let h = &hessians[0];
                let r = (0..3)
                    .max_by(|&a, &b| h.row(a).norm().partial_cmp(&h.row(b).norm()).expect("finite"))
                    .expect("three rows");
                let v = [h[(r, 0)], h[(r, 1)], h[(r, 2)]];
                if vanishes_on_line(&num, &v)? {
                    (CubicClass::LinePlusConic, vec![unknown(1)], Some(1))
                } else {
                    (CubicClass::IrreducibleCuspidal, vec![], None)
                }
            }
        },
        2 => (CubicClass::LinePlusConic, vec![unknown(1)], Some(2)),
        3 => (CubicClass::ThreeGeneralLines, vec![unknown(1); 3], None),
        n => {
            return Err(Error::Ambiguous(format!(
                "{n} isolated singular points found; a reduced cubic has at most 3"
            )))
        }
    };
    Ok(Classification {
        class,
        singular: SingularLocus::Finite {
            points,
            unresolved: 0,
            certificate: None,
        },
        lines,
        line_conic_intersections: meets,
    })
}
