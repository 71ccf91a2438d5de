//! Seeded residual statistics over random group elements and domain points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::su22::{
    holonomy_semiinvariance, max_norm, moebius_action, quartic_invariance_factor, relative_gap,
    tensor_invariance_check, CMat2, SiegelPoint, Su22Element,
};
use crate::error::{Error, Result};

/// Standard deviation of the Lie algebra entries fed to the exponential.
pub const SAMPLE_SCALE: f64 = 0.5;
/// Operator-norm bound on random domain points.
pub const SAMPLE_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub su22: f64,
    pub homomorphism: f64,
    pub quartic: f64,
    pub semiinvariance: f64,
    pub tensor: f64,
}

impl Thresholds {
    pub fn with_tolerance(tol: f64) -> Self {
        Self {
            su22: tol,
            homomorphism: 1e-10,
            quartic: 1e-10,
            semiinvariance: 1e-10,
            tensor: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolonomyReport {
    pub samples: usize,
    pub seed: u64,
    pub thresholds: Thresholds,
    pub max_su22_residual: f64,
    pub domain_preserved: usize,
    pub min_image_margin: f64,
    pub max_homomorphism_residual: f64,
    pub max_semiinvariance_residual: f64,
    pub max_quartic_residual: f64,
    pub max_tensor_residual: f64,
    pub max_fd_residual: f64,
    pub mean_tensor_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    su22: f64,
    preserved: bool,
    margin: f64,
    homomorphism: f64,
    semi: f64,
    quartic: f64,
    tensor: f64,
    fd: f64,
}

fn gauss_matrix<R: Rng>(rng: &mut R) -> CMat2 {
    CMat2::from_fn(|_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

fn one_sample(seed: u64, index: u64) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let g1 = Su22Element::random(&mut rng, SAMPLE_SCALE);
    let g2 = Su22Element::random(&mut rng, SAMPLE_SCALE);
    let z = SiegelPoint::random(&mut rng, SAMPLE_RADIUS);

    let chk = g1.check(f64::INFINITY);
    let su22 = chk.residuals.iter().copied().fold(chk.det_residual, f64::max);

    let w = moebius_action(&g1, &z);
    let (preserved, margin) = match &w {
        Ok(w) => (true, w.margin()),
        Err(_) => (false, f64::NEG_INFINITY),
    };

    let homomorphism = match (moebius_action(&g1.compose(&g2), &z), moebius_action(&g2, &z)) {
        (Ok(direct), Ok(inner)) => {
            let nested = moebius_action(&g1, &inner)?;
            max_norm(&(direct.matrix() - nested.matrix()))
        }
        _ => f64::INFINITY,
    };

    let k = Su22Element::random_isotropy(&mut rng, 1.0);
    let semi = holonomy_semiinvariance(&k.a, &k.d, z.matrix(), 1e-12)?;
    let semi = semi.residual / semi.rhs.norm().max(1.0);

    let (det4, predicted) = quartic_invariance_factor(&gauss_matrix(&mut rng), &gauss_matrix(&mut rng));
    let quartic = relative_gap(det4, predicted);

    let report = tensor_invariance_check(&g1, &z, f64::INFINITY)?;
    Ok(Sample {
        su22,
        preserved,
        margin,
        homomorphism,
        semi,
        quartic,
        tensor: report.residual,
        fd: report.fd_residual,
    })
}

/// Runs `samples` independent seeded checks. Sample `i` draws from the
/// ChaCha8 stream `i` of `seed`, so reports do not depend on thread count.
pub fn verify_holonomy(samples: usize, seed: u64, tol: f64) -> Result<HolonomyReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let thresholds = Thresholds::with_tolerance(tol);
    let results: Vec<Sample> = (0..samples as u64)
        .into_par_iter()
        .map(|i| one_sample(seed, i))
        .collect::<Result<_>>()?;
    let max = |f: fn(&Sample) -> f64| results.iter().map(f).fold(0.0, f64::max);
    let max_su22_residual = max(|s| s.su22);
    let max_homomorphism_residual = max(|s| s.homomorphism);
    let max_semiinvariance_residual = max(|s| s.semi);
    let max_quartic_residual = max(|s| s.quartic);
    let max_tensor_residual = max(|s| s.tensor);
    let domain_preserved = results.iter().filter(|s| s.preserved).count();
    let passed = max_su22_residual <= thresholds.su22
        && domain_preserved == samples
        && max_homomorphism_residual <= thresholds.homomorphism
        && max_semiinvariance_residual <= thresholds.semiinvariance
        && max_quartic_residual <= thresholds.quartic
        && max_tensor_residual <= thresholds.tensor;
    Ok(HolonomyReport {
        samples,
        seed,
        thresholds,
        max_su22_residual,
        domain_preserved,
        min_image_margin: results.iter().map(|s| s.margin).fold(f64::INFINITY, f64::min),
        max_homomorphism_residual,
        max_semiinvariance_residual,
        max_quartic_residual,
        max_tensor_residual,
        max_fd_residual: max(|s| s.fd),
        mean_tensor_residual: if samples == 0 {
            0.0
        } else {
            results.iter().map(|s| s.tensor).sum::<f64>() / samples as f64
        },
        passed,
    })
}
