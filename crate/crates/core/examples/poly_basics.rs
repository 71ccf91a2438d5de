//! Exact polynomial arithmetic over Q and Q(i): parsing, gcd, square roots
//! and resultants.

use polycurve::poly::{gcd, parse_poly, parse_poly_in, poly_sqrt, resultant, var_list, Domain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = var_list(&["x", "y"]);
    let f = parse_poly("(x - y)^2*(x + 2*y)", &vars)?;
    let g = parse_poly("(x - y)*(3*x - y)^2", &vars)?;
    println!("f = {f}");
    println!("g = {g}");
    println!("gcd(f, g) = {}", gcd(&f, &g));

    let sq = parse_poly("x^2 - 2*x*y + y^2", &vars)?;
    println!("sqrt({sq}) = {}", poly_sqrt(&sq).expect("perfect square"));

    // Eliminating y from a circle and a line leaves the x-coordinates of
    // the two intersection points.
    let circle = parse_poly("x^2 + y^2 - 5", &vars)?;
    let line = parse_poly("y - 2*x", &vars)?;
    println!("Res_y(circle, line) = {}", resultant(&circle, &line, "y")?);

    let gaussian = parse_poly_in("x^2 + 1", &var_list(&["x"]), Domain::Gaussian)?;
    let factor = parse_poly_in("x - i", &var_list(&["x"]), Domain::Gaussian)?;
    println!("(x - i) divides x^2 + 1 over Q(i): {}", factor.divides(&gaussian));
    Ok(())
}
