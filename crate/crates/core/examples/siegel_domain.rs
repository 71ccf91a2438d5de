//! SU(2,2) acting on the bounded Siegel domain of 2×2 matrices, and the
//! seeded residual report over many random samples.

use polycurve::hermitian::{moebius_action, tensor_invariance_check, verify_holonomy, SiegelPoint, Su22Element};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = Su22Element::random(&mut rng, 0.5);
    let z = SiegelPoint::random(&mut rng, 0.9);
    let w = moebius_action(&g, &z)?;
    println!("margin before {:.4}, after {:.4}", z.margin(), w.margin());

    let r = tensor_invariance_check(&Su22Element::boost(0.7), &z, 1e-8)?;
    println!("boost Jacobian det {:.6}, residual {:.2e}", r.jacobian_det, r.residual);

    let report = verify_holonomy(500, 1, 1e-9)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
