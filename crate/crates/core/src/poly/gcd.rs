//! Multivariate gcd by recursive content / primitive-part pseudo-remainder
//! sequences, and exact square-root extraction.

use super::{Monomial, MultiPoly, Scalar};

/// Greatest common divisor over ℚ(i), normalized to leading coefficient 1.
///
/// `gcd(p, 0)` is `p` made monic and `gcd(0, 0)` is `0`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let n = p.nvars();
    match (0..n).find(|&i| p.involves(i) || q.involves(i)) {
        None => MultiPoly::one(p.vars().clone()),
        Some(v) => gcd_in(p, q, v).monic(),
    }
}

/// Gcd of a list; zero for an empty list or a list of zeros.
pub fn gcd_many<'a, I>(polys: I) -> Option<MultiPoly>
where
    I: IntoIterator<Item = &'a MultiPoly>,
{
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => {
                if g.is_constant() && !g.is_zero() {
                    return Some(g);
                }
                gcd(&g, p)
            }
        });
    }
    acc
}

/// Content of `p` viewed as a polynomial in the variable at `v`: the monic gcd
/// of its coefficients.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    gcd_many(p.coefficients_in(v).iter().filter(|c| !c.is_zero()))
        .unwrap_or_else(|| MultiPoly::zero(p.vars().clone()))
}

fn primitive_part(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(p, v);
    if c.is_zero() {
        return p.clone();
    }
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in the variable at `v`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v);
    let lb = b.coefficients_in(v).pop().expect("nonzero");
    let x = MultiPoly::var(a.vars().clone(), v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).pop().expect("nonzero");
        let shift = x.pow(dr - db);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

fn gcd_in(p: &MultiPoly, q: &MultiPoly, v: usize) -> MultiPoly {
    if p.degree_in(v) == 0 {
        return gcd(p, &content_in(q, v));
    }
    if q.degree_in(v) == 0 {
        return gcd(&content_in(p, v), q);
    }
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let c = gcd(&cp, &cq);
    let mut a = p.div_exact(&cp).expect("content divides");
    let mut b = q.div_exact(&cq).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c;
        }
        a = b;
        b = primitive_part(&r, v);
    }
    &c * &primitive_part(&b, v)
}

/// Exact square root: `r` with `r·r = p`, when one exists over ℚ(i).
///
/// The leading coefficient of `r` is the canonical root of `p`'s leading
/// coefficient (see [`Scalar::sqrt`]), so `4x²y⁴ ↦ 2xy²` and `-x² ↦ i·x`.
pub fn poly_sqrt(p: &MultiPoly) -> Option<MultiPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let (lm, lc) = p.leading_term()?;
    if lm.exponents().iter().any(|e| e % 2 == 1) {
        return None;
    }
    let root_lc = lc.sqrt()?;
    let root_lm = Monomial::new(lm.exponents().iter().map(|e| e / 2).collect());
    let vars = p.vars().clone();
    let mut r = MultiPoly::monomial(vars.clone(), root_lm.clone(), root_lc.clone());
    let two_lt = MultiPoly::monomial(vars.clone(), root_lm, &root_lc * &Scalar::from_int(2));
    let (two_lm, two_lc) = two_lt.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut last = r.leading_term()?.0.clone();
    loop {
        let rem = p - &(&r * &r);
        let Some((m, c)) = rem.leading_term() else {
            return Some(r);
        };
        if !two_lm.divides(m) {
            return None;
        }
        let next = m.div(&two_lm);
        // Terms of the root appear in strictly decreasing order.
        if next >= last {
            return None;
        }
        let coeff = c / &two_lc;
        r = &r + &MultiPoly::monomial(vars.clone(), next.clone(), coeff);
        last = next;
    }
}

/// Square root up to a scalar unit: `(u, r)` with `p = u·r²` and `r` monic.
pub fn sqrt_up_to_unit(p: &MultiPoly) -> Option<(Scalar, MultiPoly)> {
    if p.is_zero() {
        return Some((Scalar::one(), p.clone()));
    }
    let u = p.leading_coefficient()?.clone();
    let r = poly_sqrt(&p.monic())?.monic();
    Some((u, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, var_list, VarList};

    fn xy() -> VarList {
        var_list(&["x", "y"])
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        assert_eq!(gcd(&p("x^2*y"), &p("x^3")), p("x^2"));
    }

    #[test]
    fn difference_of_squares_gcd() {
        // Oracle: (x - y)(x + y) expanded by hand is x^2 - y^2.
        let prod = &p("x - y") * &p("x + y");
        assert_eq!(prod, p("x^2 - y^2"));
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x - y")), p("x - y"));
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        assert_eq!(gcd(&p("3*x^2 + 6*y"), &p("0")), p("x^2 + 2*y"));
        assert!(gcd(&p("0"), &p("0")).is_zero());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert_eq!(gcd(&p("x^2 + y^2 + 1"), &p("x*y - 1")), p("1"));
        assert_eq!(gcd(&p("4"), &p("6*x")), p("1"));
    }

    #[test]
    fn gcd_multivariate_content() {
        // content in x is (y+1); primitive parts share x - y
        let a = &p("(y + 1)*(x - y)*(x + 2)");
        let b = &p("(y + 1)^2*(x - y)");
        assert_eq!(gcd(a, b), p("x*y - y^2 + x - y"));
    }

    #[test]
    fn square_roots() {
        assert_eq!(poly_sqrt(&p("x^2 + 2*x*y + y^2")), Some(p("x + y")));
        assert_eq!(poly_sqrt(&parse_poly("x^3", &var_list(&["x"])).unwrap()), None);
        // Oracle: (2xy²)² = 4x²y⁴.
        assert_eq!(&p("2*x*y^2") * &p("2*x*y^2"), p("4*x^2*y^4"));
        assert_eq!(poly_sqrt(&p("4*x^2*y^4")), Some(p("2*x*y^2")));
        assert_eq!(poly_sqrt(&p("x^2 + y")), None);
        assert_eq!(poly_sqrt(&p("x^2 + x*y + y^2")), None);
        assert_eq!(poly_sqrt(&p("2*x^2")), None);
    }

    #[test]
    fn sqrt_up_to_unit_absorbs_scalar() {
        let (u, r) = sqrt_up_to_unit(&p("2*x^2 - 4*x*y + 2*y^2")).unwrap();
        assert_eq!(u, Scalar::from_int(2));
        assert_eq!(r, p("x - y"));
    }
}
