use super::{MultiPoly, Scalar};
use crate::error::{Error, Result};

/// Sylvester matrix of `p` and `q` in the variable at `v`, `p`'s shifted
/// coefficient rows first.
pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, v: usize) -> Vec<Vec<MultiPoly>> {
    let zero = MultiPoly::zero(p.vars().clone());
    let m = p.degree_in(v) as usize;
    let n = q.degree_in(v) as usize;
    let size = m + n;
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in pc.iter().enumerate() {
            row[shift + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in qc.iter().enumerate() {
            row[shift + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination with row pivoting.
pub fn determinant(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        panic!("determinant of an empty matrix needs a variable list");
    }
    let vars = a[0][0].vars().clone();
    let mut sign = Scalar::one();
    let mut prev = MultiPoly::one(vars.clone());
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return MultiPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(vars.clone());
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

/// Sylvester resultant of `p` and `q` eliminating the variable `var`.
///
/// Degrees are the actual degrees in `var`. A zero input gives zero; when one
/// input is free of `var` the result is that input raised to the other's degree.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let v = p
        .var_index(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    if p.vars() != q.vars() {
        return Err(Error::Precondition("resultant inputs use different variable lists".into()));
    }
    Ok(resultant_at(p, q, v))
}

pub(crate) fn resultant_at(p: &MultiPoly, q: &MultiPoly, v: usize) -> MultiPoly {
    if p.is_zero() || q.is_zero() {
        return MultiPoly::zero(p.vars().clone());
    }
    let m = p.degree_in(v);
    let n = q.degree_in(v);
    match (m, n) {
        (0, 0) => MultiPoly::one(p.vars().clone()),
        (0, _) => p.pow(n),
        (_, 0) => q.pow(m),
        _ => determinant(sylvester_matrix(p, q, v)),
    }
}
