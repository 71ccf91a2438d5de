//! Plane projective cubics: singular locus, seven-way classification and the
//! holonomy consequence attached to each class.

mod exact;
mod float;

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{parse_poly_in, var_list, Domain, MultiPoly, Scalar, VarList};

pub use exact::{classify, singular_points};
pub use float::{classify_float, DEFAULT_TOLERANCE};

/// 3×3 matrix of exact scalars, row-major.
pub type Mat3 = [[Scalar; 3]; 3];

pub fn cubic_vars() -> VarList {
    var_list(&["x0", "x1", "x2"])
}

/// A nonzero ternary form of degree exactly 3.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCubic {
    f: MultiPoly,
}

impl PlaneCubic {
    pub fn new(f: MultiPoly) -> Result<Self> {
        if f.nvars() != 3 {
            return Err(Error::NotACubic(format!("expected 3 variables, got {}", f.nvars())));
        }
        match f.homogeneous_degree() {
            Some(3) => Ok(Self { f }),
            _ if f.is_zero() => Err(Error::NotACubic("zero polynomial".into())),
            Some(d) => Err(Error::NotACubic(format!("homogeneous of degree {d}"))),
            None => Err(Error::NotACubic(format!("{f} is not homogeneous"))),
        }
    }

    /// Parses a cubic in `x0, x1, x2`.
    pub fn parse(text: &str, domain: Domain) -> Result<Self> {
        Self::new(parse_poly_in(text, &cubic_vars(), domain)?)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    /// The cubic `F(M·x)`.
    pub fn transform(&self, m: &Mat3) -> Self {
        let vars = self.f.vars().clone();
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| {
                (0..3).fold(MultiPoly::zero(vars.clone()), |acc, j| {
                    &acc + &MultiPoly::var(vars.clone(), j).scale(&m[i][j])
                })
            })
            .collect();
        Self {
            f: self.f.compose(&images),
        }
    }
}

impl fmt::Display for PlaneCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.f.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubicClass {
    SmoothIrreducible,
    IrreducibleNodal,
    IrreducibleCuspidal,
    LinePlusConic,
    DoubleLinePlusLine,
    ThreeConcurrentLines,
    ThreeGeneralLines,
    TripleLine,
}

impl CubicClass {
    pub const ALL: [CubicClass; 8] = [
        CubicClass::SmoothIrreducible,
        CubicClass::IrreducibleNodal,
        CubicClass::IrreducibleCuspidal,
        CubicClass::LinePlusConic,
        CubicClass::DoubleLinePlusLine,
        CubicClass::ThreeConcurrentLines,
        CubicClass::ThreeGeneralLines,
        CubicClass::TripleLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CubicClass::SmoothIrreducible => "SmoothIrreducible",
            CubicClass::IrreducibleNodal => "IrreducibleNodal",
            CubicClass::IrreducibleCuspidal => "IrreducibleCuspidal",
            CubicClass::LinePlusConic => "LinePlusConic",
            CubicClass::DoubleLinePlusLine => "DoubleLinePlusLine",
            CubicClass::ThreeConcurrentLines => "ThreeConcurrentLines",
            CubicClass::ThreeGeneralLines => "ThreeGeneralLines",
            CubicClass::TripleLine => "TripleLine",
        }
    }

    /// Case label (a)–(g); both kinds of irreducible singular cubic are
    /// separate cases (b) and (c).
    pub fn case_label(self) -> char {
        match self {
            CubicClass::SmoothIrreducible => 'a',
            CubicClass::IrreducibleNodal => 'b',
            CubicClass::IrreducibleCuspidal => 'c',
            CubicClass::LinePlusConic => 'd',
            CubicClass::DoubleLinePlusLine => 'e',
            CubicClass::ThreeConcurrentLines | CubicClass::ThreeGeneralLines => 'f',
            CubicClass::TripleLine => 'g',
        }
    }
}

impl fmt::Display for CubicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Type of an isolated singular point, read off the tangent cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// Two distinct tangent lines.
    Node,
    /// One double tangent line.
    Cusp,
    /// Multiplicity three: the tangent cone is the whole cubic.
    HigherMultiplicity,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::Node => "Node",
            PointKind::Cusp => "Cusp",
            PointKind::HigherMultiplicity => "HigherMultiplicity",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointCoords {
    /// Normalized so the first nonzero coordinate is 1.
    Exact([Scalar; 3]),
    /// Unit norm with the first coordinate of largest modulus real positive.
    Approx([Complex64; 3]),
}

impl PointCoords {
    pub fn to_complex(&self) -> [Complex64; 3] {
        match self {
            PointCoords::Exact(p) => [p[0].to_complex(), p[1].to_complex(), p[2].to_complex()],
            PointCoords::Approx(p) => *p,
        }
    }
}

impl fmt::Display for PointCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointCoords::Exact(p) => write!(f, "({}:{}:{})", p[0], p[1], p[2]),
            PointCoords::Approx(p) => {
                let s: Vec<String> = p.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
                write!(f, "({})", s.join(":"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub coords: PointCoords,
    pub kind: PointKind,
    /// Monic quadratic form `xᵀ·H(p)·x` (zero for a triple point); exact mode only.
    pub tangent_cone: Option<MultiPoly>,
}

/// Singular points lying outside ℚ(i): after the projective change of
/// coordinates `x = M·x'`, the roots of `projection(t, 1)` are the ratios
/// `x0'/x1'` of the remaining points.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualCertificate {
    pub transform: Mat3,
    pub projection: MultiPoly,
    pub points: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SingularLocus {
    Finite {
        points: Vec<SingularPoint>,
        /// Points found only through the certificate.
        unresolved: u32,
        certificate: Option<ResidualCertificate>,
    },
    /// Singular along a line: the cubic has a repeated linear factor.
    OneDimensional { line: Option<MultiPoly> },
}

impl SingularLocus {
    /// Number of isolated singular points, `None` for a one-dimensional locus.
    pub fn count(&self) -> Option<u32> {
        match self {
            SingularLocus::Finite { points, unresolved, .. } => Some(points.len() as u32 + unresolved),
            SingularLocus::OneDimensional { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count() == Some(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineComponent {
    /// Monic linear form; absent when the line is not defined over ℚ(i) or
    /// could not be written down in float mode.
    pub form: Option<MultiPoly>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: CubicClass,
    pub singular: SingularLocus,
    pub lines: Vec<LineComponent>,
    /// Line–conic meeting count (1 for tangency, 2 for transversal) in the
    /// line-plus-conic case.
    pub line_conic_intersections: Option<u32>,
}

impl Classification {
    pub fn line_multiplicity(&self) -> u32 {
        self.lines.iter().map(|l| l.multiplicity).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HolonomyVerdictKind {
    StabilizerFinite,
    SplitsCompletely,
    ExcludedByBogomolov,
}

impl HolonomyVerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            HolonomyVerdictKind::StabilizerFinite => "StabilizerFinite",
            HolonomyVerdictKind::SplitsCompletely => "SplitsCompletely",
            HolonomyVerdictKind::ExcludedByBogomolov => "ExcludedByBogomolov",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyVerdict {
    pub kind: HolonomyVerdictKind,
    pub clause: &'static str,
}

pub fn holonomy_verdict(k: CubicClass) -> HolonomyVerdict {
    use CubicClass::*;
    match k {
        SmoothIrreducible => HolonomyVerdict {
            kind: HolonomyVerdictKind::StabilizerFinite,
            clause: "a smooth plane cubic has only finitely many linear automorphisms, \
                     which is incompatible with a holonomy group of dimension at least 3",
        },
        IrreducibleNodal | IrreducibleCuspidal | LinePlusConic | DoubleLinePlusLine
        | ThreeConcurrentLines | ThreeGeneralLines => HolonomyVerdict {
            kind: HolonomyVerdictKind::SplitsCompletely,
            clause: "the stabilizer of the cubic is diagonalizable, so the restricted holonomy is U(1)^3 \
                     and the universal cover is the polydisk when K is ample",
        },
        TripleLine => HolonomyVerdict {
            kind: HolonomyVerdictKind::ExcludedByBogomolov,
            clause: "a triple line gives 3L = K + D with D effective, so h^0(mL) would grow faster \
                     than Bogomolov's bound O(m) allows",
        },
    }
}

/// A random invertible integer matrix with entries in `[−3, 3]`.
pub fn random_projectivity<R: Rng>(rng: &mut R) -> Mat3 {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-3..=3)));
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            return m.map(|row| row.map(Scalar::from_int));
        }
    }
}

/// Whether the exact classification is unchanged under `trials` random
/// integer projectivities drawn from a generator seeded with `seed`.
pub fn pgl_invariance_check(c: &PlaneCubic, trials: usize, seed: u64) -> Result<bool> {
    let base = classify(c)?.class;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let m = random_projectivity(&mut rng);
        if classify(&c.transform(&m))?.class != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical representatives of the eight classes, keyed by class.
pub fn canonical_forms() -> [(CubicClass, &'static str); 8] {
    [
        (CubicClass::SmoothIrreducible, "x0^3 + x1^3 + x2^3"),
        (CubicClass::IrreducibleNodal, "x2^2*x0 - x1^2*(x0 + x1)"),
        (CubicClass::IrreducibleCuspidal, "x2^2*x0 - x1^3"),
        (CubicClass::LinePlusConic, "x0*(x0^2 + x1^2 + x2^2)"),
        (CubicClass::DoubleLinePlusLine, "x0^2*x1"),
        (CubicClass::ThreeConcurrentLines, "x0*x1*(x0 + x1)"),
        (CubicClass::ThreeGeneralLines, "x0*x1*x2"),
        (CubicClass::TripleLine, "x0^3"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_table() {
        assert_eq!(
            holonomy_verdict(CubicClass::SmoothIrreducible).kind,
            HolonomyVerdictKind::StabilizerFinite
        );
        assert_eq!(
            holonomy_verdict(CubicClass::IrreducibleCuspidal).kind,
            HolonomyVerdictKind::SplitsCompletely
        );
        assert_eq!(
            holonomy_verdict(CubicClass::TripleLine).kind,
            HolonomyVerdictKind::ExcludedByBogomolov
        );
        let split = CubicClass::ALL
            .iter()
            .filter(|k| holonomy_verdict(**k).kind == HolonomyVerdictKind::SplitsCompletely)
            .count();
        assert_eq!(split, 6);
    }

    #[test]
    fn rejects_non_cubics() {
        assert!(matches!(PlaneCubic::parse("x0^2*x1 + x2", Domain::Rational), Err(Error::NotACubic(_))));
        assert!(matches!(PlaneCubic::parse("x0^2", Domain::Rational), Err(Error::NotACubic(_))));
        assert!(matches!(PlaneCubic::parse("0", Domain::Rational), Err(Error::NotACubic(_))));
    }

    #[test]
    fn transform_substitutes_linear_forms() {
        let c = PlaneCubic::parse("x0^3", Domain::Rational).unwrap();
        let mut m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from_int((i == j) as i64)));
        m[0][1] = Scalar::from_int(1);
        let t = c.transform(&m);
        assert_eq!(t.to_string(), "x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3");
    }

    #[test]
    fn projectivity_invariance_on_canonical_forms() {
        for (k, text) in canonical_forms() {
            let c = PlaneCubic::parse(text, Domain::Rational).unwrap();
            assert!(pgl_invariance_check(&c, 5, 11).unwrap(), "{k}");
        }
    }
}
