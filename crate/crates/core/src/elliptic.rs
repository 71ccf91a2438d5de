//! Canonical bundle formula arithmetic for elliptic surfaces `f: X → B`.
//!
//! With `K_X ≡ S_m + f*(δ)`, `deg δ = χ − 2 + 2b`, a nilpotent special
//! tensor built from `L = f*Ω¹_B(S)` exists as soon as `|2K_B − δ| ≠ ∅`,
//! a divisor of degree `3b − 3 − p_g` when `q = b`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn deg_delta(chi: i64, b: i64) -> i64 {
    chi - 2 + 2 * b
}

/// `deg(2K_B − δ) = 3b − 3 − p_g`, valid when `χ = 1 − b + p_g`.
pub fn special_tensor_degree(b: i64, p_g: i64) -> i64 {
    3 * b - 3 - p_g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceStatus {
    /// `deg ≥ b`: every divisor class of that degree is effective.
    Guaranteed,
    /// `0 ≤ deg < b`: effectivity depends on the divisor class.
    Indeterminate,
    /// `deg < 0`: no effective divisor.
    NegativeDegree,
    /// `p_g < b`, i.e. `χ < 1`, outside the construction's range.
    ChiBelowOne,
}

impl ExistenceStatus {
    pub fn name(self) -> &'static str {
        match self {
            ExistenceStatus::Guaranteed => "Guaranteed",
            ExistenceStatus::Indeterminate => "Indeterminate",
            ExistenceStatus::NegativeDegree => "NegativeDegree",
            ExistenceStatus::ChiBelowOne => "ChiBelowOne",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorExistence {
    /// True exactly in the window `b ≤ p_g ≤ 2b − 3` (which forces `b ≥ 3`).
    pub exists: bool,
    pub status: ExistenceStatus,
    pub degree: i64,
    pub reason: String,
}

pub fn exists_special_tensor(b: i64, p_g: i64) -> TensorExistence {
    let degree = special_tensor_degree(b, p_g);
    let (status, reason) = if p_g < b {
        (
            ExistenceStatus::ChiBelowOne,
            format!("p_g = {p_g} < b = {b}, so χ = {} < 1", 1 - b + p_g),
        )
    } else if degree < 0 {
        (
            ExistenceStatus::NegativeDegree,
            format!("deg(2K_B − δ) = {degree} < 0"),
        )
    } else if degree < b {
        (
            ExistenceStatus::Indeterminate,
            format!("0 ≤ deg(2K_B − δ) = {degree} < b = {b}: p_g = {p_g} > 2b − 3 = {}", 2 * b - 3),
        )
    } else {
        (
            ExistenceStatus::Guaranteed,
            format!("{b} ≤ p_g = {p_g} ≤ 2b − 3 = {}, deg(2K_B − δ) = {degree} ≥ b", 2 * b - 3),
        )
    };
    TensorExistence {
        exists: status == ExistenceStatus::Guaranteed,
        status,
        degree,
        reason,
    }
}

/// A fibre `F_p = Σ m_i C_i` with `n_p = gcd(m_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberData {
    multiplicities: Vec<u32>,
    n_p: u32,
}

impl FiberData {
    /// Rejects empty or zero multiplicities and multiple fibres whose
    /// components do not all have multiplicity `n_p`.
    pub fn new(multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidFiber("a fibre needs at least one component".into()));
        }
        if multiplicities.contains(&0) {
            return Err(Error::InvalidFiber("multiplicities must be positive".into()));
        }
        let n_p = multiplicities.iter().fold(0u32, |g, &m| g.gcd(&m));
        if n_p > 1 && multiplicities.iter().any(|&m| m != n_p) {
            return Err(Error::InvalidFiber(format!(
                "multiple fibre with n_p = {n_p} has components of other multiplicity: {multiplicities:?}"
            )));
        }
        Ok(Self { multiplicities, n_p })
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn n_p(&self) -> u32 {
        self.n_p
    }

    pub fn is_multiple(&self) -> bool {
        self.n_p > 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationCheck {
    /// Neither `2Ŝ_p ≥ F_p` nor `S_m,p ≥ F_p`.
    pub ok: bool,
    /// Componentwise coefficients of `2Ŝ_p`.
    pub two_s_hat: Vec<u32>,
    /// Componentwise coefficients of `S_m,p`.
    pub s_m: Vec<u32>,
    pub trace: String,
}

fn dominates(lhs: &[u32], rhs: &[u32]) -> bool {
    lhs.iter().zip(rhs).all(|(a, b)| a >= b)
}

/// Checks that `2Ŝ + S_m` does not contain the fibre at `p`, so the fibre
/// contributes nothing to `f_*O(2Ŝ + S_m)`.
pub fn fiber_saturation_check(f: &FiberData) -> Result<SaturationCheck> {
    let m = &f.multiplicities;
    let (two_s_hat, s_m, trace) = if f.is_multiple() {
        // S_p = (n_p − 1)·F'_p is entirely multiple-fibre contribution.
        let s_m = vec![f.n_p - 1; m.len()];
        let trace = format!("multiple fibre: S_m,p = {}·F' < {}·F' = F_p", f.n_p - 1, f.n_p);
        (vec![0; m.len()], s_m, trace)
    } else {
        let Some(i) = m.iter().position(|&x| x == 1) else {
            return Err(Error::InvalidFiber(format!(
                "non-multiple fibre {m:?} has no component of multiplicity 1"
            )));
        };
        let two_s_hat: Vec<u32> = m.iter().map(|&x| 2 * (x - 1)).collect();
        let trace = format!("component C_{} has m = 1 and 2(m − 1) = 0 < 1", i + 1);
        (two_s_hat, vec![0; m.len()], trace)
    };
    let ok = !dominates(&two_s_hat, m) && !dominates(&s_m, m);
    Ok(SaturationCheck {
        ok,
        two_s_hat,
        s_m,
        trace,
    })
}

/// Numerical data of an elliptic fibration with `q = b` assumed by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticFibrationData {
    pub b: i64,
    pub chi: i64,
    pub p_g: i64,
    pub multiple_fibers: Vec<u32>,
    pub fibers: Vec<FiberData>,
    /// The non-product assumption `q = b`, recorded rather than inferred.
    pub q_equals_b: bool,
}

impl EllipticFibrationData {
    pub fn new(b: i64, chi: i64, p_g: i64, multiple_fibers: Vec<u32>, fibers: Vec<FiberData>) -> Result<Self> {
        if b < 0 {
            return Err(Error::InvalidArgument(format!("base genus {b} is negative")));
        }
        if chi != 1 - b + p_g {
            return Err(Error::InvalidArgument(format!(
                "χ = {chi} but 1 − b + p_g = {} (q = b assumed)",
                1 - b + p_g
            )));
        }
        if let Some(n) = multiple_fibers.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidFiber(format!("multiple fibre multiplicity {n} < 2")));
        }
        Ok(Self {
            b,
            chi,
            p_g,
            multiple_fibers,
            fibers,
            q_equals_b: true,
        })
    }

    pub fn deg_delta(&self) -> i64 {
        deg_delta(self.chi, self.b)
    }

    pub fn special_tensor_degree(&self) -> i64 {
        special_tensor_degree(self.b, self.p_g)
    }

    pub fn existence(&self) -> TensorExistence {
        exists_special_tensor(self.b, self.p_g)
    }
}

/// The hyperelliptic base of genus `6h + 1` with `M = h·H`, `6M ≡ K_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeierstrassInstance {
    pub h: u32,
    pub b: u32,
    /// Degree of the hyperelliptic divisor `H`.
    pub deg_h: u32,
    pub deg_m: u32,
    pub deg_k_b: u32,
    pub deg_6m: u32,
    /// Degrees of the line bundles `O(4M)` and `O(6M)` holding `g₂`, `g₃`.
    pub deg_g2: u32,
    pub deg_g3: u32,
    /// `h⁰(O_B(K_B − 6M)) = h⁰(O_B) = 1`.
    pub tensor_space_dim: u32,
}

impl WeierstrassInstance {
    pub fn balanced(&self) -> bool {
        self.deg_k_b == self.deg_6m
    }
}

impl fmt::Display for WeierstrassInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h = {}, b = {}, deg K_B = {}, deg 6M = {}, dim = {}",
            self.h, self.b, self.deg_k_b, self.deg_6m, self.tensor_space_dim
        )
    }
}

pub fn weierstrass_instance(h: u32) -> Result<WeierstrassInstance> {
    if h < 1 {
        return Err(Error::InvalidArgument("h must be at least 1".into()));
    }
    let b = 6 * h + 1;
    let deg_h = 2;
    let deg_m = h * deg_h;
    let inst = WeierstrassInstance {
        h,
        b,
        deg_h,
        deg_m,
        deg_k_b: 2 * b - 2,
        deg_6m: 6 * deg_m,
        deg_g2: 4 * deg_m,
        deg_g3: 6 * deg_m,
        // K_B − 6M ≡ 0 has exactly the constant sections.
        tensor_space_dim: 1,
    };
    debug_assert!(inst.balanced());
    Ok(inst)
}
