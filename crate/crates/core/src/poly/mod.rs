//! Exact multivariate polynomials over ℚ or ℚ(i).
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order (total degree first, then `x0 > x1 > …`), so the
//! leading term is always the last map entry. Zero coefficients are never
//! stored.

mod gcd;
mod parse;
mod resultant;
pub mod roots;
mod scalar;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

pub use gcd::{content_in, gcd, gcd_many, poly_sqrt, sqrt_up_to_unit};
pub use parse::{parse_poly, parse_poly_in, ParseError, ParseErrorKind};
pub use resultant::{determinant, resultant, sylvester_matrix};
pub use scalar::{Domain, FiniteComplex, Scalar};

use crate::error::{Error, Result};

/// Ordered variable names shared between polynomials.
pub type VarList = Arc<[String]>;

pub fn var_list(names: &[&str]) -> VarList {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarList,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(vars: VarList) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarList, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(vars: VarList) -> Self {
        Self::constant(vars, Scalar::one())
    }

    /// The polynomial consisting of the single variable at `idx`.
    pub fn var(vars: VarList, idx: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Self::monomial(vars, Monomial(exps), Scalar::one())
    }

    pub fn var_named(vars: VarList, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: VarList, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(vars: VarList, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(Monomial(e), &c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Scalar::zero),
        )
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of every term, when the polynomial is homogeneous.
    /// The zero polynomial has no homogeneity degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Does the variable at `idx` occur in some term?
    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Coefficients `c_k` with `self = Σ c_k · v^k`, `v` the variable at `idx`.
    /// Each `c_k` keeps the full variable list and is free of `v`.
    pub fn coefficients_in(&self, idx: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(idx) as usize;
        let mut out = vec![MultiPoly::zero(self.vars.clone()); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            let mut e = m.0.clone();
            e[idx] = 0;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(vars: VarList, idx: usize, coeffs: &[MultiPoly]) -> Self {
        let v = MultiPoly::var(vars.clone(), idx);
        let mut acc = MultiPoly::zero(vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &v) + c;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to the variable at `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    /// One formal partial derivative per variable, in variable order.
    pub fn partials(&self) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// Exact composition: each bound variable is replaced by its polynomial.
    ///
    /// Replacement polynomials must share this polynomial's variable list.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Result<Self> {
        let mut images: Vec<MultiPoly> = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match bindings.get(name) {
                Some(p) => {
                    if p.vars != self.vars {
                        return Err(Error::Precondition(format!(
                            "replacement for `{name}` uses a different variable list"
                        )));
                    }
                    images.push(p.clone());
                }
                None => images.push(MultiPoly::var(self.vars.clone(), i)),
            }
        }
        for name in bindings.keys() {
            if self.var_index(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        Ok(self.compose(&images))
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable list, which becomes the result's list.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(target.clone()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-expresses the polynomial over `new_vars`. Every variable that occurs
    /// must be present (by name) in `new_vars`.
    pub fn with_vars(&self, new_vars: VarList) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut out = MultiPoly::zero(new_vars.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.vars[i].clone()))?;
                e[j] += k;
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_complex();
                for (x, &e) in point.iter().zip(&m.0) {
                    if e > 0 {
                        t *= x.powu(e);
                    }
                }
                t
            })
            .sum()
    }

    /// Multivariate division by a single divisor under graded-lex order:
    /// `self = q·d + r` where no term of `r` is divisible by `LT(d)`.
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let (lm, lc) = d.leading_term().expect("division by zero polynomial");
        let lc_inv = lc.inv().expect("nonzero");
        let mut q = MultiPoly::zero(self.vars.clone());
        let mut r = MultiPoly::zero(self.vars.clone());
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let tm = m.div(lm);
                let tc = &c * &lc_inv;
                p = &p - &d.mul_term(&tm, &tc);
                q.add_term(tm, &tc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, &c);
            }
        }
        (q, r)
    }

    /// `Some(q)` with `self = q·d` exactly, else `None`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.div_exact(self).is_some()
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials use different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form, terms in descending graded-lex order. Parsing the
    /// output with the same variable list gives back the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative_real = c.is_real() && c.re().is_negative();
            let pure_neg_imag = c.re().is_zero() && c.im().is_negative();
            let (sign, mag) = if negative_real || pure_neg_imag {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! forward_poly_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_poly_owned!(Add, add);
forward_poly_owned!(Sub, sub);
forward_poly_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        parse_poly(s, &var_list(vars)).unwrap()
    }

    #[test]
    fn graded_lex_leading_term() {
        let f = p("x*y^2 + x^2 + y^3", &["x", "y"]);
        // degree 3 terms: x*y^2 and y^3; lex with x > y picks x*y^2
        assert_eq!(f.leading_term().unwrap().0.exponents(), &[1, 2]);
    }

    #[test]
    fn partials_power_rule() {
        let f = p("x0^3 + x1^3 + x2^3", &["x0", "x1", "x2"]);
        let d: Vec<String> = f.partials().iter().map(|q| q.to_string()).collect();
        assert_eq!(d, vec!["3*x0^2", "3*x1^2", "3*x2^2"]);
        let g = p("x0*x1*x2", &["x0", "x1", "x2"]);
        let d: Vec<String> = g.partials().iter().map(|q| q.to_string()).collect();
        assert_eq!(d, vec!["x1*x2", "x0*x2", "x0*x1"]);
        let c = p("7", &["x0", "x1"]);
        assert!(c.partials().iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn substitute_chart_and_shift() {
        let vars = var_list(&["x", "y", "u"]);
        let y = p("y", &["x", "y", "u"]);
        let mut b = HashMap::new();
        b.insert("y".to_string(), parse_poly("u*x", &vars).unwrap());
        assert_eq!(y.substitute(&b).unwrap(), parse_poly("u*x", &vars).unwrap());

        let x2 = p("x^2", &["x"]);
        let mut b = HashMap::new();
        b.insert("x".to_string(), p("x + 1", &["x"]));
        assert_eq!(x2.substitute(&b).unwrap(), p("x^2 + 2*x + 1", &["x"]));

        let f = p("x^2*y - 3", &["x", "y"]);
        assert_eq!(f.substitute(&HashMap::new()).unwrap(), f);
    }

    #[test]
    fn substitute_unknown_variable_errors() {
        let f = p("x", &["x"]);
        let mut b = HashMap::new();
        b.insert("z".to_string(), p("x", &["x"]));
        assert!(matches!(f.substitute(&b), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn division_exact_and_remainder() {
        let f = p("x^2 - y^2", &["x", "y"]);
        let g = p("x - y", &["x", "y"]);
        assert_eq!(f.div_exact(&g).unwrap(), p("x + y", &["x", "y"]));
        assert!(p("x^2 + y", &["x", "y"]).div_exact(&g).is_none());
    }

    #[test]
    fn homogeneity_marker() {
        assert_eq!(p("x2^2*x0 - x1^3", &["x0", "x1", "x2"]).homogeneous_degree(), Some(3));
        assert_eq!(p("x0 + x1^2", &["x0", "x1"]).homogeneous_degree(), None);
        assert_eq!(p("0", &["x"]).homogeneous_degree(), None);
    }

    #[test]
    fn coefficients_roundtrip() {
        let f = p("x^2*y + 3*x*y^2 - y + 2", &["x", "y"]);
        let cs = f.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coefficients_in(f.vars().clone(), 1, &cs), f);
    }
}
