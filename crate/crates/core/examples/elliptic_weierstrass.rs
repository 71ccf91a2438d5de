//! Degree bookkeeping for elliptic fibrations over a curve of genus b.

use polycurve::elliptic::{exists_special_tensor, fiber_saturation_check, weierstrass_instance, FiberData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (b, p_g) in [(3, 3), (4, 5), (4, 6), (2, 2), (5, 1)] {
        let e = exists_special_tensor(b, p_g);
        println!("b = {b}, p_g = {p_g}: {} ({}, degree {})", e.exists, e.status.name(), e.degree);
    }
    for h in 1..=3 {
        let w = weierstrass_instance(h)?;
        println!(
            "h = {h}: base genus {}, deg K_B = {}, deg 6M = {}, g2/g3 degrees {}/{}, tensors {}",
            w.b, w.deg_k_b, w.deg_6m, w.deg_g2, w.deg_g3, w.tensor_space_dim
        );
    }
    let fibre = FiberData::new(vec![3, 3, 3])?;
    let check = fiber_saturation_check(&fibre)?;
    println!("fibre {:?}: multiple = {}, saturated = {}", fibre.multiplicities(), fibre.is_multiple(), check.ok);
    Ok(())
}
