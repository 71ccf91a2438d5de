//! Sections of line bundles on Hirzebruch surfaces `F_n`.
//!
//! `Σ` is the negative section (`Σ² = −n`) and `F` a fibre. Pushing
//! `O(aΣ + bF)` forward to the base gives `⊕_{i=0}^{a} O_{P¹}(b − i·n)`, so
//! `h⁰ = Σ_i max(0, b − i·n + 1)`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HirzebruchDivisor {
    pub n: u32,
    /// Coefficient of the negative section.
    pub a: i64,
    /// Coefficient of the fibre.
    pub b: i64,
}

impl HirzebruchDivisor {
    pub fn new(n: u32, a: i64, b: i64) -> Self {
        Self { n, a, b }
    }
}

impl fmt::Display for HirzebruchDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Σ + {}F on F_{}", self.a, self.b, self.n)
    }
}

pub fn h0_line_bundle(d: HirzebruchDivisor) -> u64 {
    if d.a < 0 {
        return 0;
    }
    let n = i64::from(d.n);
    (0..=d.a).map(|i| (d.b - i * n + 1).max(0) as u64).sum()
}

/// Dimension of the space of nilpotent-type special tensors on `F_n`, the
/// sections of `2Σ + (n−2)F`.
pub fn special_tensor_space_dim(n: u32) -> u64 {
    h0_line_bundle(HirzebruchDivisor::new(n, 2, i64::from(n) - 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangentSections {
    /// `h⁰(T_X)`, equal to `h⁰(Ω¹_X(−K_X))` on a surface.
    pub h0: u64,
    /// `h⁰` of the relative tangent bundle `O(2Σ + nF)`.
    pub relative: u64,
    /// `h⁰` of the pulled-back base tangent bundle `O(2F)`.
    pub base: u64,
    /// `n + 5` for `n ≥ 1`, `6` for the quadric.
    pub closed_form: u64,
    /// `F_1` is the blow-up of P² and not minimal.
    pub minimal: bool,
}

/// `h⁰(T_{F_n})` from `0 → T_{X/B} → T_X → π*T_B → 0`.
///
/// Every vector field on the base lifts (the SL₂ action on the base lifts to
/// `F_n`), so the map to `H⁰(π*T_B)` is onto and the connecting map vanishes.
pub fn h0_tangent(n: u32) -> TangentSections {
    let relative = h0_line_bundle(HirzebruchDivisor::new(n, 2, i64::from(n)));
    let base = h0_line_bundle(HirzebruchDivisor::new(n, 0, 2));
    let closed_form = if n == 0 { 6 } else { u64::from(n) + 5 };
    TangentSections {
        h0: relative + base,
        relative,
        base,
        closed_form,
        minimal: n != 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalVerdict {
    /// `P¹×P¹`: the split tensor exists.
    Quadric,
    /// `F_2`: the nilpotent-type tensor is unique.
    F2,
    /// `F_n`, `n ≥ 3`: the tensor space has dimension `n − 1 ≥ 2`.
    FnNonUnique { dim: u64 },
    /// `F_1`: no special tensor of either type.
    F1Excluded,
}

impl fmt::Display for RationalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalVerdict::Quadric => f.write_str("Quadric"),
            RationalVerdict::F2 => f.write_str("F2"),
            RationalVerdict::FnNonUnique { dim } => write!(f, "FnNonUnique(dim {dim})"),
            RationalVerdict::F1Excluded => f.write_str("F1Excluded"),
        }
    }
}

pub fn rational_verdict(n: u32) -> RationalVerdict {
    match n {
        0 => RationalVerdict::Quadric,
        1 => RationalVerdict::F1Excluded,
        2 => RationalVerdict::F2,
        _ => RationalVerdict::FnNonUnique {
            dim: special_tensor_space_dim(n),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundle_examples() {
        assert_eq!(h0_line_bundle(HirzebruchDivisor::new(3, 2, 1)), 2);
        assert_eq!(h0_line_bundle(HirzebruchDivisor::new(2, 2, 0)), 1);
        assert_eq!(h0_line_bundle(HirzebruchDivisor::new(0, 2, 3)), 12);
        for k in 0..6 {
            assert_eq!(h0_line_bundle(HirzebruchDivisor::new(1, 0, k)), k as u64 + 1);
        }
        assert_eq!(h0_line_bundle(HirzebruchDivisor::new(4, -1, 10)), 0);
    }

    #[test]
    fn special_tensor_dimensions() {
        assert_eq!(special_tensor_space_dim(0), 0);
        assert_eq!(special_tensor_space_dim(2), 1);
        assert_eq!(special_tensor_space_dim(5), 4);
        for n in 0..=50u32 {
            assert_eq!(special_tensor_space_dim(n), u64::from(n.saturating_sub(1)));
        }
    }

    #[test]
    fn tangent_sections() {
        assert_eq!(h0_tangent(0).h0, 6);
        assert_eq!(h0_tangent(2).h0, 7);
        assert_eq!(h0_tangent(4).h0, 9);
        assert!(!h0_tangent(1).minimal);
        for n in 0..20 {
            let t = h0_tangent(n);
            assert_eq!(t.h0, t.closed_form);
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(rational_verdict(0), RationalVerdict::Quadric);
        assert_eq!(rational_verdict(1), RationalVerdict::F1Excluded);
        assert_eq!(rational_verdict(2), RationalVerdict::F2);
        assert_eq!(rational_verdict(7), RationalVerdict::FnNonUnique { dim: 6 });
    }
}
