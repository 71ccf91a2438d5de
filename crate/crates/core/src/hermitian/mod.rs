//! SU(2,2) acting on the Siegel domain of 2×2 matrices, the invariance of
//! `det(dZ)²`, and fixed points of automorphisms of `(P¹)^r`.

pub mod fixed_point;
pub mod su22;
pub mod verify;

pub use fixed_point::{
    chordal_distance, exact_fixed_point, polydisk_fixed_point, polydisk_fixed_point_with, EigenChoice, FixedPoint,
    PolydiskAutomorphism, ProjPoint,
};
pub use su22::{
    check_su22, holonomy_semiinvariance, moebius_action, quartic_invariance_factor, tensor_invariance_check, CMat2,
    InvarianceReport, SemiInvariance, SiegelPoint, Su22Check, Su22Element, DEFAULT_TOLERANCE,
};
pub use verify::{verify_holonomy, HolonomyReport};
