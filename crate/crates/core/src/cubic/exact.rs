//! Exact classification over ℚ(i).
//!
//! After a change of coordinates putting `(0:0:1)` off the curve, every
//! singular point projects to a distinct point `(x0 : x1)`: a line through
//! the centre and two singular points would meet the cubic with
//! multiplicity four and so be a component, contradicting the choice of
//! centre. The projection is cut out by the gcd over `k` of
//! `Res_{x2}(G0, G1 + k·G2)`, where `G_i = ∂F/∂x_i`.

use crate::error::{Error, Result};
use crate::poly::roots::binary_form_roots;
use crate::poly::{gcd, gcd_many, poly_sqrt, resultant, var_list, MultiPoly, Scalar, VarList};

use super::{
    Classification, CubicClass, LineComponent, Mat3, PlaneCubic, PointCoords, PointKind, ResidualCertificate,
    SingularLocus, SingularPoint,
};

fn det3(m: &Mat3) -> Scalar {
    let t = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}

fn inverse3(m: &Mat3) -> Option<Mat3> {
    let d = det3(m).inv()?;
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
    let mut inv: Mat3 = Default::default();
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // inverse[i][j] = cofactor[j][i] / det
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let mut c = minor(rows[0], rows[1], cols[0], cols[1]);
            if (i + j) % 2 == 1 {
                c = -c;
            }
            *entry = &c * &d;
        }
    }
    Some(inv)
}

fn mat_vec(m: &Mat3, v: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| (0..3).fold(Scalar::zero(), |acc, j| &acc + &(&m[i][j] * &v[j])))
}

fn cross(p: &[Scalar; 3], q: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
        &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
        &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
    ]
}

fn normalize_point(p: [Scalar; 3]) -> [Scalar; 3] {
    let lead = p.iter().find(|s| !s.is_zero()).cloned().expect("nonzero point");
    let inv = lead.inv().expect("nonzero");
    p.map(|s| &s * &inv)
}

fn linear_form(vars: &VarList, coeffs: &[Scalar; 3]) -> MultiPoly {
    (0..3)
        .fold(MultiPoly::zero(vars.clone()), |acc, i| {
            &acc + &MultiPoly::var(vars.clone(), i).scale(&coeffs[i])
        })
        .monic()
}

/// Two independent points spanning the line `v·x = 0`.
fn line_basis(v: &[Scalar; 3]) -> [[Scalar; 3]; 2] {
    let j = (0..3).find(|&j| !v[j].is_zero()).expect("nonzero line");
    let mut out: Vec<[Scalar; 3]> = Vec::with_capacity(2);
    for k in (0..3).filter(|&k| k != j) {
        let mut p: [Scalar; 3] = Default::default();
        p[k] = v[j].clone();
        p[j] = -&v[k];
        out.push(p);
    }
    [out[0].clone(), out[1].clone()]
}

/// Whether the cubic vanishes identically on the line `v·x = 0`.
fn vanishes_on_line(f: &MultiPoly, v: &[Scalar; 3]) -> bool {
    let [p, q] = line_basis(v);
    let st = var_list(&["s", "t"]);
    let s = MultiPoly::var(st.clone(), 0);
    let t = MultiPoly::var(st.clone(), 1);
    let images: Vec<MultiPoly> = (0..3).map(|i| &s.scale(&p[i]) + &t.scale(&q[i])).collect();
    f.compose(&images).is_zero()
}

fn hessian_at(f: &MultiPoly, p: &[Scalar; 3]) -> Mat3 {
    let g = f.partials();
    std::array::from_fn(|i| std::array::from_fn(|j| g[i].derivative(j).eval(p)))
}

fn rank3(h: &Mat3) -> u32 {
    if h.iter().flatten().all(Scalar::is_zero) {
        return 0;
    }
    for r in [(0, 1), (0, 2), (1, 2)] {
        for c in [(0, 1), (0, 2), (1, 2)] {
            let m = &(&h[r.0][c.0] * &h[r.1][c.1]) - &(&h[r.0][c.1] * &h[r.1][c.0]);
            if !m.is_zero() {
                return if det3(h).is_zero() { 2 } else { 3 };
            }
        }
    }
    1
}

fn quadratic_form(vars: &VarList, h: &Mat3) -> MultiPoly {
    let mut q = MultiPoly::zero(vars.clone());
    for i in 0..3 {
        for j in 0..3 {
            let xi = MultiPoly::var(vars.clone(), i);
            let xj = MultiPoly::var(vars.clone(), j);
            q = &q + &(&xi * &xj).scale(&h[i][j]);
        }
    }
    if q.is_zero() {
        q
    } else {
        q.monic()
    }
}

/// Small integer vectors in a fixed order, starting with the unit vectors.
fn candidate_vectors(bound: i64) -> Vec<[Scalar; 3]> {
    let mut out: Vec<[i64; 3]> = vec![[0, 0, 1], [1, 0, 0], [0, 1, 0]];
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let v = [a, b, c];
                if v != [0, 0, 0] && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out.into_iter().map(|v| v.map(Scalar::from_int)).collect()
}

fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    (0..3).fold(Scalar::zero(), |acc, i| &acc + &(&a[i] * &b[i]))
}

/// Columns `(c1, c2, c3)` with `F(c3) ≠ 0` and `∇F(c3)·c1 ≠ 0`, so that in
/// `F(M·x')` both `x2'³` and `x0'·x2'²` have nonzero coefficients.
fn projection_frame(f: &MultiPoly) -> Mat3 {
    let grads = f.partials();
    let cands = candidate_vectors(2);
    for c3 in &cands {
        if f.eval(c3).is_zero() {
            continue;
        }
        let grad: [Scalar; 3] = std::array::from_fn(|i| grads[i].eval(c3));
        for c1 in &cands {
            if dot(&grad, c1).is_zero() || cross(c1, c3).iter().all(Scalar::is_zero) {
                continue;
            }
            for c2 in &cands {
                let m: Mat3 = std::array::from_fn(|i| [c1[i].clone(), c2[i].clone(), c3[i].clone()]);
                if !det3(&m).is_zero() {
                    return m;
                }
            }
        }
    }
    unreachable!("a nonzero cubic cannot vanish on every vector of the search grid")
}

/// Singular locus over ℚ(i).
pub fn singular_points(c: &PlaneCubic) -> Result<SingularLocus> {
    let f = c.poly();
    let grads = f.partials();
    let g = gcd_many(grads.iter().filter(|p| !p.is_zero())).expect("cubic has a nonzero partial");
    if !g.is_constant() {
        let line = match g.total_degree() {
            Some(1) => Some(g),
            Some(2) => poly_sqrt(&g),
            _ => None,
        };
        return Ok(SingularLocus::OneDimensional { line });
    }
    let m = projection_frame(f);
    let fp = c.transform(&m);
    let gp = fp.poly().partials();
    let vk = var_list(&["x0", "x1", "x2", "k"]);
    let lift = |p: &MultiPoly| p.with_vars(vk.clone()).expect("subset of variables");
    let k = MultiPoly::var(vk.clone(), 3);
    let a = lift(&gp[0]);
    let b = &lift(&gp[1]) + &(&k * &lift(&gp[2]));
    let res = resultant(&a, &b, "x2")?;
    let proj = gcd_many(res.coefficients_in(3).iter().filter(|p| !p.is_zero()))
        .ok_or_else(|| Error::Precondition("projection resultant vanished identically".into()))?;
    let proj = proj.with_vars(c.poly().vars().clone())?;
    if proj.is_constant() {
        return Ok(SingularLocus::Finite {
            points: Vec::new(),
            unresolved: 0,
            certificate: None,
        });
    }
    let roots = binary_form_roots(&proj, 0, 1);
    let lm = var_list(&["l", "m"]);
    let l = MultiPoly::var(lm.clone(), 0);
    let mu = MultiPoly::var(lm.clone(), 1);
    let mut points = Vec::new();
    let mut unresolved = roots.residual_distinct;
    for ([ra, rb], _) in &roots.roots {
        let images = [l.scale(ra), l.scale(rb), mu.clone()];
        let restricted: Vec<MultiPoly> = gp.iter().map(|q| q.compose(&images)).collect();
        let fiber = gcd_many(restricted.iter().filter(|p| !p.is_zero()))
            .unwrap_or_else(|| MultiPoly::zero(lm.clone()));
        if fiber.is_zero() || fiber.is_constant() {
            unresolved += 1;
            continue;
        }
        let fr = binary_form_roots(&fiber, 0, 1);
        unresolved += fr.residual_distinct;
        for ([lam, mv], _) in fr.roots {
            let local = [ra * &lam, rb * &lam, mv];
            let p = normalize_point(mat_vec(&m, &local));
            points.push(classify_point(f, p));
        }
    }
    let certificate = (unresolved > 0).then(|| ResidualCertificate {
        transform: m,
        projection: roots.residual.clone(),
        points: unresolved,
    });
    Ok(SingularLocus::Finite {
        points,
        unresolved,
        certificate,
    })
}

fn classify_point(f: &MultiPoly, p: [Scalar; 3]) -> SingularPoint {
    let h = hessian_at(f, &p);
    let kind = match rank3(&h) {
        0 => PointKind::HigherMultiplicity,
        1 => PointKind::Cusp,
        _ => PointKind::Node,
    };
    SingularPoint {
        coords: PointCoords::Exact(p),
        kind,
        tangent_cone: Some(quadratic_form(f.vars(), &h)),
    }
}

fn exact_coords(p: &SingularPoint) -> &[Scalar; 3] {
    match &p.coords {
        PointCoords::Exact(c) => c,
        PointCoords::Approx(_) => unreachable!("exact path produces exact points"),
    }
}

/// The three lines through a triple point `p`.
fn concurrent_lines(f: &MultiPoly, p: &[Scalar; 3]) -> Vec<LineComponent> {
    let j = (0..3).find(|&j| !p[j].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&k| k != j).collect();
    // Columns e_{others[0]}, e_{others[1]}, p.
    let mut m: Mat3 = Default::default();
    m[others[0]][0] = Scalar::one();
    m[others[1]][1] = Scalar::one();
    for i in 0..3 {
        m[i][2] = p[i].clone();
    }
    let inv = inverse3(&m).expect("frame is invertible");
    let binary = PlaneCubic { f: f.clone() }.transform(&m);
    let roots = binary_form_roots(binary.poly(), 0, 1);
    let mut lines = Vec::new();
    for ([a, b], mult) in roots.roots {
        // b·x0' − a·x1' = 0 with x' = M⁻¹·x
        let w = [b, -a, Scalar::zero()];
        let v: [Scalar; 3] = std::array::from_fn(|c| (0..3).fold(Scalar::zero(), |acc, r| &acc + &(&w[r] * &inv[r][c])));
        lines.push(LineComponent {
            form: Some(linear_form(f.vars(), &v)),
            multiplicity: mult,
        });
    }
    for _ in 0..roots.residual_distinct {
        lines.push(LineComponent {
            form: None,
            multiplicity: 1,
        });
    }
    lines
}

/// Exact classification.
pub fn classify(c: &PlaneCubic) -> Result<Classification> {
    let f = c.poly();
    let vars = f.vars().clone();
    let singular = singular_points(c)?;
    let (class, lines, meets) = match &singular {
        SingularLocus::OneDimensional { line } => {
            let l = line.clone().ok_or_else(|| Error::Precondition("repeated factor is not linear".into()))?;
            let sq = &l * &l;
            let rest = f.div_exact(&sq).ok_or_else(|| Error::Precondition("double line does not divide".into()))?;
            if gcd(&rest, &l).is_constant() {
                let lines = vec![
                    LineComponent {
                        form: Some(l),
                        multiplicity: 2,
                    },
                    LineComponent {
                        form: Some(rest.monic()),
                        multiplicity: 1,
                    },
                ];
                (CubicClass::DoubleLinePlusLine, lines, None)
            } else {
                let lines = vec![LineComponent {
                    form: Some(l),
                    multiplicity: 3,
                }];
                (CubicClass::TripleLine, lines, None)
            }
        }
        SingularLocus::Finite { points, unresolved, .. } => {
            let n = points.len() as u32 + unresolved;
            match n {
                0 => (CubicClass::SmoothIrreducible, Vec::new(), None),
                1 => {
                    let p = points.first().ok_or_else(|| {
                        Error::Precondition("a unique singular point must be defined over ℚ(i)".into())
                    })?;
                    let coords = exact_coords(p);
                    match p.kind {
                        PointKind::Node => (CubicClass::IrreducibleNodal, Vec::new(), None),
                        PointKind::HigherMultiplicity => {
                            (CubicClass::ThreeConcurrentLines, concurrent_lines(f, coords), None)
                        }
                        PointKind::Cusp => {
                            let h = hessian_at(f, coords);
                            let row = h
                                .iter()
                                .find(|r| r.iter().any(|s| !s.is_zero()))
                                .cloned()
                                .expect("rank one");
                            if vanishes_on_line(f, &row) {
                                let lines = vec![LineComponent {
                                    form: Some(linear_form(&vars, &row)),
                                    multiplicity: 1,
                                }];
                                (CubicClass::LinePlusConic, lines, Some(1))
                            } else {
                                (CubicClass::IrreducibleCuspidal, Vec::new(), None)
                            }
                        }
                    }
                }
                2 => {
                    let form = (points.len() == 2).then(|| {
                        let v = cross(exact_coords(&points[0]), exact_coords(&points[1]));
                        linear_form(&vars, &v)
                    });
                    (
                        CubicClass::LinePlusConic,
                        vec![LineComponent { form, multiplicity: 1 }],
                        Some(2),
                    )
                }
                3 => {
                    let lines = if points.len() == 3 {
                        [(0, 1), (0, 2), (1, 2)]
                            .iter()
                            .map(|&(i, j)| LineComponent {
                                form: Some(linear_form(
                                    &vars,
                                    &cross(exact_coords(&points[i]), exact_coords(&points[j])),
                                )),
                                multiplicity: 1,
                            })
                            .collect()
                    } else {
                        vec![
                            LineComponent {
                                form: None,
                                multiplicity: 1
                            };
                            3
                        ]
                    };
                    (CubicClass::ThreeGeneralLines, lines, None)
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "{n} isolated singular points is impossible for a reduced cubic"
                    )))
                }
            }
        }
    };
    Ok(Classification {
        class,
        singular,
        lines,
        line_conic_intersections: meets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{canonical_forms, cubic_vars};
    use crate::poly::{parse_poly, Domain};

    fn cubic(s: &str) -> PlaneCubic {
        PlaneCubic::parse(s, Domain::Rational).unwrap()
    }

    fn q(s: &str) -> MultiPoly {
        parse_poly(s, &cubic_vars()).unwrap()
    }

    fn pt(a: i64, b: i64, c: i64) -> PointCoords {
        PointCoords::Exact([Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)])
    }

    #[test]
    fn fermat_is_smooth() {
        let s = singular_points(&cubic("x0^3 + x1^3 + x2^3")).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn cusp_at_origin_chart() {
        let SingularLocus::Finite { points, unresolved, .. } = singular_points(&cubic("x2^2*x0 - x1^3")).unwrap() else {
            panic!("finite locus expected");
        };
        assert_eq!(unresolved, 0);
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].coords, pt(1, 0, 0));
        assert_eq!(points[0].kind, PointKind::Cusp);
        assert_eq!(points[0].tangent_cone, Some(q("x2^2")));
    }

    #[test]
    fn double_line_locus() {
        let s = singular_points(&cubic("x0^2*x1")).unwrap();
        assert_eq!(s, SingularLocus::OneDimensional { line: Some(q("x0")) });
    }

    #[test]
    fn canonical_forms_classify() {
        for (k, text) in canonical_forms() {
            let r = classify(&cubic(text)).unwrap();
            assert_eq!(r.class, k, "{text}");
        }
    }

    #[test]
    fn nodal_tangent_cone() {
        let r = classify(&cubic("x2^2*x0 - x1^2*(x0 + x1)")).unwrap();
        let SingularLocus::Finite { points, .. } = r.singular else { panic!() };
        assert_eq!(points[0].coords, pt(1, 0, 0));
        assert_eq!(points[0].kind, PointKind::Node);
        assert_eq!(points[0].tangent_cone, Some(q("x1^2 - x2^2")));
    }

    #[test]
    fn line_plus_conic_meets_twice() {
        let r = classify(&cubic("x0*(x0^2 + x1^2 + x2^2)")).unwrap();
        assert_eq!(r.class, CubicClass::LinePlusConic);
        assert_eq!(r.line_conic_intersections, Some(2));
        assert_eq!(r.lines[0].form, Some(q("x0")));
        assert_eq!(r.singular.count(), Some(2));
    }

    #[test]
    fn tangent_line_plus_conic() {
        // conic x0·x2 − x1² with its tangent line x0 at (0:0:1)
        let r = classify(&cubic("x0*(x0*x2 - x1^2)")).unwrap();
        assert_eq!(r.class, CubicClass::LinePlusConic);
        assert_eq!(r.line_conic_intersections, Some(1));
        assert_eq!(r.lines[0].form, Some(q("x0")));
    }

    #[test]
    fn concurrent_and_general_lines() {
        let r = classify(&cubic("x0*x1*(x0 + x1)")).unwrap();
        assert_eq!(r.class, CubicClass::ThreeConcurrentLines);
        let SingularLocus::Finite { points, .. } = &r.singular else { panic!() };
        assert_eq!(points[0].coords, pt(0, 0, 1));
        let mut forms: Vec<String> = r.lines.iter().map(|l| l.form.as_ref().unwrap().to_string()).collect();
        forms.sort();
        assert_eq!(forms, vec!["x0", "x0 + x1", "x1"]);

        let r = classify(&cubic("x0*x1*x2")).unwrap();
        assert_eq!(r.class, CubicClass::ThreeGeneralLines);
        let SingularLocus::Finite { points, .. } = &r.singular else { panic!() };
        let coords: Vec<PointCoords> = points.iter().map(|p| p.coords.clone()).collect();
        for p in [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)] {
            assert!(coords.contains(&p));
        }
    }

    #[test]
    fn irrational_singular_points_use_certificate() {
        // Line x0 + x1 + x2 and conic meeting at points with √2 coordinates.
        let r = classify(&cubic("(x0 + x1 + x2)*(x0^2 + x1^2 - 3*x2^2)")).unwrap();
        assert_eq!(r.class, CubicClass::LinePlusConic);
        let SingularLocus::Finite { unresolved, certificate, .. } = &r.singular else { panic!() };
        assert_eq!(*unresolved, 2);
        assert_eq!(certificate.as_ref().unwrap().points, 2);

        // Three lines x0 = ω·x1 (ω³ = 2) through (0:0:1): the lines are not
        // over ℚ(i) but the point is.
        let r = classify(&cubic("x0^3 - 2*x1^3")).unwrap();
        assert_eq!(r.class, CubicClass::ThreeConcurrentLines);
        assert_eq!(r.line_multiplicity(), 3);
    }

    #[test]
    fn gaussian_coefficients() {
        let c = PlaneCubic::parse("x0*(x0 + i*x1)*x2", Domain::Gaussian).unwrap();
        assert_eq!(classify(&c).unwrap().class, CubicClass::ThreeGeneralLines);
    }

    #[test]
    fn inverse_matrix() {
        let m: Mat3 = [[2, 1, 0], [0, 1, 3], [1, 0, 1]].map(|r| r.map(Scalar::from_int));
        let inv = inverse3(&m).unwrap();
        for i in 0..3 {
            let e: [Scalar; 3] = std::array::from_fn(|j| Scalar::from_int((i == j) as i64));
            let col: [Scalar; 3] = std::array::from_fn(|r| inv[r][i].clone());
            assert_eq!(mat_vec(&m, &col), e);
        }
    }
}
