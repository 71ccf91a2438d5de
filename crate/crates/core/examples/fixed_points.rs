//! Fixed points of polydisk automorphisms z ↦ (ψ_i(z_σ(i))) on (P¹)^r.

use num_complex::Complex64;
use polycurve::hermitian::{
    exact_fixed_point, polydisk_fixed_point, polydisk_fixed_point_with, CMat2, EigenChoice, PolydiskAutomorphism,
};
use polycurve::poly::Scalar;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Swap the factors and apply z ↦ 2z and z ↦ z + 1.
    let a = PolydiskAutomorphism::new(
        vec![1, 0],
        vec![CMat2::new(c(2.0), c(0.0), c(0.0), c(1.0)), CMat2::new(c(1.0), c(1.0), c(0.0), c(1.0))],
    )?;
    for choice in [EigenChoice::LargerModulus, EigenChoice::SmallerModulus] {
        let fp = polydisk_fixed_point_with(&a, choice, 0);
        let affine: Vec<_> = fp.coords.iter().map(|p| p.to_affine()).collect();
        println!("{choice:?}: {affine:?}, residual {:.1e}", fp.residual);
    }

    let s = Scalar::from_int;
    let exact = exact_fixed_point(&[1, 0], &[[[s(2), s(0)], [s(0), s(1)]], [[s(1), s(1)], [s(0), s(1)]]], EigenChoice::SmallerModulus)?;
    println!("exact: {exact:?}");

    // A pure translation only fixes infinity.
    let t = PolydiskAutomorphism::new(vec![0], vec![CMat2::new(c(1.0), c(3.0), c(0.0), c(1.0))])?;
    println!("translation: at infinity = {}", polydisk_fixed_point(&t).coords[0].is_infinity(1e-12));
    Ok(())
}
