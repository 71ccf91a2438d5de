//! Section counts on Hirzebruch surfaces F_n.

use polycurve::ruled::{h0_line_bundle, h0_tangent, rational_verdict, special_tensor_space_dim, HirzebruchDivisor};

fn main() {
    println!("{:>3} {:>10} {:>10} {:>10}", "n", "h0(T)", "tensors", "h0(2S+nF)");
    for n in 0..=8u32 {
        let t = h0_tangent(n);
        let d = HirzebruchDivisor::new(n, 2, i64::from(n));
        let tensors = if n >= 2 { special_tensor_space_dim(n) } else { 0 };
        println!("{n:>3} {:>10} {tensors:>10} {:>10}", t.h0, h0_line_bundle(d));
    }
    for n in [0, 1, 2, 5] {
        println!("F_{n}: {:?}", rational_verdict(n));
    }
}
