//! Symmetric special tensors on a surface and their trace-zero endomorphisms.
//!
//! A local tensor `Σ a_ij dz_i·dz_j / (dz_1∧dz_2)` with `a21 = a12` acts as
//! the endomorphism `[[−a12, −a22], [a11, a12]]` of the cotangent bundle.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{gcd, gcd_many, parse_poly_in, resultant, sqrt_up_to_unit, var_list, Domain, MultiPoly, Scalar, VarList};

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialTensor2 {
    pub a11: MultiPoly,
    pub a12: MultiPoly,
    pub a22: MultiPoly,
    pub basepoint: [Scalar; 2],
}

impl SpecialTensor2 {
    pub fn new(a11: MultiPoly, a12: MultiPoly, a22: MultiPoly) -> Result<Self> {
        if a11.vars() != a12.vars() || a11.vars() != a22.vars() {
            return Err(Error::Precondition("tensor coefficients use different variable lists".into()));
        }
        if a11.nvars() != 2 {
            return Err(Error::Precondition(format!(
                "a surface tensor needs two local coordinates, got {}",
                a11.nvars()
            )));
        }
        if a11.is_zero() && a12.is_zero() && a22.is_zero() {
            return Err(Error::Precondition("all tensor coefficients are zero".into()));
        }
        Ok(Self {
            a11,
            a12,
            a22,
            basepoint: [Scalar::zero(), Scalar::zero()],
        })
    }

    /// Builds the tensor `(a·dx² + b·dy² + c·dx·dy) / (dx∧dy)`, i.e.
    /// `a11 = a`, `a22 = b`, `a12 = c/2`.
    pub fn from_local_form(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Result<Self> {
        let half = c.scale(&Scalar::ratio(1, 2));
        Self::new(a, half, b)
    }

    /// Parses the three coefficients over the coordinates `x, y`.
    pub fn parse(a11: &str, a12: &str, a22: &str, domain: Domain) -> Result<Self> {
        let vars = var_list(&["x", "y"]);
        Self::new(
            parse_poly_in(a11, &vars, domain)?,
            parse_poly_in(a12, &vars, domain)?,
            parse_poly_in(a22, &vars, domain)?,
        )
    }

    pub fn with_basepoint(mut self, p: [Scalar; 2]) -> Self {
        self.basepoint = p;
        self
    }

    pub fn vars(&self) -> &VarList {
        self.a11.vars()
    }

    /// Coefficients `(a, b, c)` of `a·dx² + b·dy² + c·dx·dy`.
    pub fn local_form(&self) -> (MultiPoly, MultiPoly, MultiPoly) {
        (self.a11.clone(), self.a22.clone(), self.a12.scale(&Scalar::from_int(2)))
    }
}

/// A 2×2 matrix of polynomials with zero trace.
#[derive(Debug, Clone, PartialEq)]
pub struct EndoMatrix {
    pub m11: MultiPoly,
    pub m12: MultiPoly,
    pub m21: MultiPoly,
    pub m22: MultiPoly,
}

impl EndoMatrix {
    pub fn new(m11: MultiPoly, m12: MultiPoly, m21: MultiPoly, m22: MultiPoly) -> Result<Self> {
        let m = Self { m11, m12, m21, m22 };
        if !m.trace().is_zero() {
            return Err(Error::Precondition(format!("trace is {} rather than 0", m.trace())));
        }
        Ok(m)
    }

    /// The nilpotent-shaped matrix `[[a, b], [c, −a]]`.
    pub fn from_abc(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> Self {
        Self {
            m11: a.clone(),
            m12: b.clone(),
            m21: c.clone(),
            m22: -a,
        }
    }

    pub fn trace(&self) -> MultiPoly {
        &self.m11 + &self.m22
    }

    pub fn det(&self) -> MultiPoly {
        &(&self.m11 * &self.m22) - &(&self.m12 * &self.m21)
    }

    pub fn square(&self) -> [[MultiPoly; 2]; 2] {
        let (a, b, c, d) = (&self.m11, &self.m12, &self.m21, &self.m22);
        [
            [&(a * a) + &(b * c), &(a * b) + &(b * d)],
            [&(c * a) + &(d * c), &(c * b) + &(d * d)],
        ]
    }

    pub fn apply(&self, v: &[MultiPoly; 2]) -> [MultiPoly; 2] {
        [
            &(&self.m11 * &v[0]) + &(&self.m12 * &v[1]),
            &(&self.m21 * &v[0]) + &(&self.m22 * &v[1]),
        ]
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

pub fn to_endomorphism(t: &SpecialTensor2) -> EndoMatrix {
    EndoMatrix {
        m11: -&t.a12,
        m12: -&t.a22,
        m21: t.a11.clone(),
        m22: t.a12.clone(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeterminantClass {
    /// Determinant `a11·a22 − a12²` of the endomorphism matrix.
    pub det: MultiPoly,
    /// The value when the determinant is a constant polynomial.
    pub constant: Option<Scalar>,
}

impl DeterminantClass {
    pub fn is_constant(&self) -> bool {
        self.constant.is_some()
    }
}

pub fn determinant_class(t: &SpecialTensor2) -> DeterminantClass {
    let det = to_endomorphism(t).det();
    let constant = det.constant_value();
    DeterminantClass { det, constant }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigendirection {
    pub eigenvalue: Scalar,
    pub vector: [MultiPoly; 2],
}

/// Eigendirections of a trace-zero matrix with nonzero constant determinant.
///
/// The eigenvalues are `±λ` with `λ² = −det`; the first entry of the result
/// belongs to the canonical root `λ`. Each vector is divided by the gcd of
/// its entries and scaled so its first nonzero entry has leading coefficient 1.
pub fn eigen_split(m: &EndoMatrix) -> Result<[Eigendirection; 2]> {
    if !m.trace().is_zero() {
        return Err(Error::Precondition("matrix is not trace-free".into()));
    }
    let det = m.det();
    let d = det
        .constant_value()
        .ok_or_else(|| Error::NonConstantDeterminant(det.to_string()))?;
    if d.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let lambda = (-&d).sqrt().ok_or_else(|| Error::EigenvalueOutsideField((-&d).to_string()))?;
    let plus = eigenvector(m, &lambda);
    let minus = eigenvector(m, &-&lambda);
    Ok([
        Eigendirection {
            eigenvalue: lambda.clone(),
            vector: plus,
        },
        Eigendirection {
            eigenvalue: -lambda,
            vector: minus,
        },
    ])
}

fn eigenvector(m: &EndoMatrix, lambda: &Scalar) -> [MultiPoly; 2] {
    let vars = m.m11.vars().clone();
    let l = MultiPoly::constant(vars, lambda.clone());
    let first = [m.m12.clone(), &l - &m.m11];
    let v = if first.iter().any(|p| !p.is_zero()) {
        first
    } else {
        [&l - &m.m22, m.m21.clone()]
    };
    normalize_direction(v)
}

fn normalize_direction(v: [MultiPoly; 2]) -> [MultiPoly; 2] {
    let g = gcd(&v[0], &v[1]);
    let mut w = v.map(|p| p.div_exact(&g).expect("gcd divides"));
    let lead = w
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading_coefficient().cloned())
        .expect("nonzero direction");
    let inv = lead.inv().expect("nonzero");
    for p in w.iter_mut() {
        *p = p.scale(&inv);
    }
    w
}

#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentDecomposition {
    pub delta: MultiPoly,
    pub beta: MultiPoly,
    pub gamma: MultiPoly,
    /// Total intersection number of `β = γ = 0`; `None` when not computed.
    pub z_length: Option<u32>,
}

impl NilpotentDecomposition {
    /// `(δβγ, −δβ², δγ²)`.
    pub fn reconstruct(&self) -> (MultiPoly, MultiPoly, MultiPoly) {
        let db = &self.delta * &self.beta;
        let a = &db * &self.gamma;
        let b = -&(&db * &self.beta);
        let c = &(&self.delta * &self.gamma) * &self.gamma;
        (a, b, c)
    }
}

/// Splits `[[a, b], [c, −a]]` with `a² = −bc` as `a = δβγ`, `b = −δβ²`,
/// `c = δγ²` with `gcd(β, γ)` a nonzero scalar.
pub fn nilpotent_decompose(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> Result<NilpotentDecomposition> {
    if a.vars() != b.vars() || a.vars() != c.vars() {
        return Err(Error::Precondition("inputs use different variable lists".into()));
    }
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::Precondition("all entries are zero".into()));
    }
    if !(&(a * a) + &(b * c)).is_zero() {
        return Err(Error::Precondition("a² ≠ −b·c".into()));
    }
    let vars = a.vars().clone();
    let one = MultiPoly::one(vars.clone());
    let zero = MultiPoly::zero(vars.clone());
    if b.is_zero() {
        // a = 0 too; all of c goes into δ.
        return Ok(NilpotentDecomposition {
            delta: c.clone(),
            beta: zero,
            gamma: one,
            z_length: None,
        });
    }
    if c.is_zero() {
        return Ok(NilpotentDecomposition {
            delta: -b,
            beta: one,
            gamma: zero,
            z_length: None,
        });
    }
    let delta = gcd_many([a, b, c].into_iter().filter(|p| !p.is_zero())).expect("nonzero input");
    let bq = (-b).div_exact(&delta).expect("gcd divides");
    let cq = c.div_exact(&delta).expect("gcd divides");
    let aq = a.div_exact(&delta).expect("gcd divides");
    let (u, beta) = sqrt_up_to_unit(&bq).ok_or_else(|| Error::NotASquare(format!("−b/δ = {bq}")))?;
    let (_, gamma0) = sqrt_up_to_unit(&cq).ok_or_else(|| Error::NotASquare(format!("c/δ = {cq}")))?;
    let w = aq
        .div_exact(&(&beta * &gamma0))
        .and_then(|q| q.constant_value())
        .ok_or_else(|| Error::Precondition("a/δ is not a multiple of √(−b/δ)·√(c/δ)".into()))?;
    let s = &w / &u;
    let delta = delta.scale(&u);
    let gamma = gamma0.scale(&s);
    let z_length = intersection_length(&beta, &gamma);
    Ok(NilpotentDecomposition {
        delta,
        beta,
        gamma,
        z_length,
    })
}

/// Nilpotent decomposition of the endomorphism of a tensor with `det = 0`.
pub fn nilpotent_from_tensor(t: &SpecialTensor2) -> Result<NilpotentDecomposition> {
    let m = to_endomorphism(t);
    nilpotent_decompose(&m.m11, &m.m12, &m.m21)
}

/// Total intersection number in the affine plane of two coprime
/// nonconstant polynomials in two variables, or `None` otherwise.
///
/// After a shear `x ↦ x + t·y` both curves have constant leading coefficient
/// in `y`, so the degree of `Res_y` counts every affine intersection with
/// multiplicity.
pub fn intersection_length(f: &MultiPoly, g: &MultiPoly) -> Option<u32> {
    if f.nvars() != 2 || f.is_constant() || g.is_constant() {
        return None;
    }
    if !gcd(f, g).is_constant() {
        return None;
    }
    let vars = f.vars().clone();
    let x = MultiPoly::var(vars.clone(), 0);
    let y = MultiPoly::var(vars.clone(), 1);
    for t in 0..64 {
        let shifted_x = &x + &y.scale(&Scalar::from_int(t));
        let images = [shifted_x, y.clone()];
        let fs = f.compose(&images);
        let gs = g.compose(&images);
        let monic_in_y = |p: &MultiPoly| {
            p.coefficients_in(1)
                .last()
                .is_some_and(|lc| lc.is_constant())
        };
        if monic_in_y(&fs) && monic_in_y(&gs) {
            let r = resultant(&fs, &gs, &vars[1]).ok()?;
            return r.total_degree();
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupPullback {
    /// Numerator `a + b·u² + c·u` after `y ↦ u·x`, in the chart `(x, u)`.
    pub numerator: MultiPoly,
    /// Coefficient of `dx²/(dx∧du)`, present when the pullback is regular.
    pub dx2: Option<MultiPoly>,
    /// Coefficient of `du²/(dx∧du)`, namely `b·x`.
    pub du2: MultiPoly,
    /// Coefficient of `dx·du/(dx∧du)`, namely `2bu + c`.
    pub dxdu: MultiPoly,
    pub regular: bool,
    /// Whether `a`, `b`, `c` all vanish at the basepoint.
    pub vanishes_at_basepoint: bool,
}

/// Pulls the tensor back to the chart `y = u·x` of the blow-up at the
/// basepoint; the pullback is regular iff `x` divides `a + b·u² + c·u`.
pub fn blowup_pullback(t: &SpecialTensor2) -> BlowupPullback {
    let (a, b, c) = t.local_form();
    let src = t.vars().clone();
    let xname = src[0].clone();
    let uname = if xname == "u" { "u_".to_string() } else { "u".to_string() };
    let chart: VarList = vec![xname, uname].into();
    let x = MultiPoly::var(chart.clone(), 0);
    let u = MultiPoly::var(chart.clone(), 1);
    let [p0, p1] = &t.basepoint;
    // Coordinates centred at the basepoint: x_old = x + p0, y_old = u·x + p1.
    let images = [
        &x + &MultiPoly::constant(chart.clone(), p0.clone()),
        &(&u * &x) + &MultiPoly::constant(chart.clone(), p1.clone()),
    ];
    let (a, b, c) = (a.compose(&images), b.compose(&images), c.compose(&images));
    let numerator = &(&a + &(&(&b * &u) * &u)) + &(&c * &u);
    let dx2 = numerator.div_exact(&x);
    let regular = dx2.is_some();
    let du2 = &b * &x;
    let dxdu = &(&b * &u).scale(&Scalar::from_int(2)) + &c;
    let at_p = [p0.clone(), p1.clone()];
    let (oa, ob, oc) = t.local_form();
    let vanishes_at_basepoint = [oa, ob, oc].iter().all(|p| p.eval(&at_p).is_zero());
    BlowupPullback {
        numerator,
        dx2,
        du2,
        dxdu,
        regular,
        vanishes_at_basepoint,
    }
}

/// A fractional linear map `z ↦ (a·z + b)/(c·z + d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mobius {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Mobius {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::NotInvertible(format!("({})·({}) − ({})·({}) = 0", m.a, m.d, m.b, m.c)));
        }
        Ok(m)
    }

    /// `z ↦ a·z + b`.
    pub fn affine(a: Scalar, b: Scalar) -> Result<Self> {
        Self::new(a, b, Scalar::zero(), Scalar::one())
    }

    pub fn identity() -> Self {
        Self {
            a: Scalar::one(),
            b: Scalar::zero(),
            c: Scalar::zero(),
            d: Scalar::one(),
        }
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }
}

/// A rational function `num / den`.
#[derive(Debug, Clone)]
struct Frac {
    num: MultiPoly,
    den: MultiPoly,
}

impl Frac {
    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Signature of a permutation of `0..n` given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> Result<i32> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let mut sign = 1;
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Pulls `(dw_1·…·dw_n)/(dw_1∧…∧dw_n)` back along
/// `w_i = f_i(z_{perm[i]})` and returns the resulting constant multiple of
/// `(dz_1·…·dz_n)/(dz_1∧…∧dz_n)`.
///
/// The symmetric numerator and the Jacobian determinant are computed
/// symbolically as rational functions in `z_1, …, z_n`; their ratio is
/// verified to be constant.
pub fn product_tensor_sign(n: usize, perm: &[usize], maps: &[Mobius]) -> Result<Scalar> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(format!("dimension {n} outside 1..=6")));
    }
    if perm.len() != n || maps.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} permutation entries and {n} maps, got {} and {}",
            perm.len(),
            maps.len()
        )));
    }
    permutation_sign(perm)?;
    for m in maps {
        if m.det().is_zero() {
            return Err(Error::NotInvertible(format!("{m:?}")));
        }
    }
    let names: Vec<String> = (1..=n).map(|k| format!("z{k}")).collect();
    let vars: VarList = names.into();
    let konst = |s: &Scalar| MultiPoly::constant(vars.clone(), s.clone());
    let zero = Frac {
        num: MultiPoly::zero(vars.clone()),
        den: MultiPoly::one(vars.clone()),
    };
    // Jacobian ∂w_i/∂z_j; f'(z) = (ad − bc)/(cz + d)².
    let mut jac: Vec<Vec<Frac>> = vec![vec![zero.clone(); n]; n];
    for (i, f) in maps.iter().enumerate() {
        let z = MultiPoly::var(vars.clone(), perm[i]);
        let denom = &(&z * &konst(&f.c)) + &konst(&f.d);
        jac[i][perm[i]] = Frac {
            num: konst(&f.det()),
            den: &denom * &denom,
        };
    }
    // Symmetric product: each dw_i contributes its single nonzero entry.
    let mut sym = Frac {
        num: MultiPoly::one(vars.clone()),
        den: MultiPoly::one(vars.clone()),
    };
    for (i, row) in jac.iter().enumerate() {
        sym = sym.mul(&row[perm[i]]);
    }
    let det = leibniz_det(&jac, &zero);
    if det.num.is_zero() {
        return Err(Error::NotInvertible("Jacobian determinant vanishes".into()));
    }
    // sym / det = (sym.num · det.den) / (sym.den · det.num)
    let top = &sym.num * &det.den;
    let bottom = &sym.den * &det.num;
    let k = top.leading_coefficient().expect("nonzero") / bottom.leading_coefficient().expect("nonzero");
    if top != bottom.scale(&k) {
        return Err(Error::Precondition("pulled-back tensor is not a constant multiple".into()));
    }
    Ok(k)
}

fn leibniz_det(m: &[Vec<Frac>], zero: &Frac) -> Frac {
    let n = m.len();
    let mut acc = zero.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm.iter().enumerate().all(|(i, &j)| !m[i][j].num.is_zero()) {
            let mut t = m[0][perm[0]].clone();
            for (i, &j) in perm.iter().enumerate().skip(1) {
                t = t.mul(&m[i][j]);
            }
            if permutation_sign(&perm).expect("valid") < 0 {
                t = t.neg();
            }
            acc = acc.add(&t);
        }
        if !next_permutation(&mut perm) {
            return acc;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
