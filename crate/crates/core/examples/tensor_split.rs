//! A trace-free tensor on a surface chart viewed as an endomorphism of the
//! tangent bundle: determinant, nilpotent factorization and blow-up.

use polycurve::poly::{Domain, Scalar};
use polycurve::tensor::{blowup_pullback, determinant_class, nilpotent_from_tensor, to_endomorphism, SpecialTensor2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // y²·dx² − 2xy·dx·dy + x²·dy² = (y·dx − x·dy)², a square of a 1-form.
    let t = SpecialTensor2::parse("y^2", "-x*y", "x^2", Domain::Rational)?;
    let m = to_endomorphism(&t);
    println!("endomorphism {m}");
    println!("trace {}, det {}", m.trace(), determinant_class(&t).det);

    let d = nilpotent_from_tensor(&t)?;
    println!("delta = {}, beta = {}, gamma = {}", d.delta, d.beta, d.gamma);
    let (a, b, c) = d.reconstruct();
    println!("reconstructed [[a, b], [c, -a]] with a = {a}, b = {b}, c = {c}");

    let bl = blowup_pullback(&t.clone().with_basepoint([Scalar::zero(), Scalar::zero()]));
    println!("blow-up at the origin: regular = {}", bl.regular);
    let moved = t.with_basepoint([Scalar::one(), Scalar::zero()]);
    println!("blow-up at (1, 0): regular = {}", blowup_pullback(&moved).regular);
    Ok(())
}
