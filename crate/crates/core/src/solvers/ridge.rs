use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::admissibility::ExponentSet;
use crate::error::{Error, Result};
use crate::field::{Grid, ScalarField};
use crate::functionals::{Energy, Functional};

/// Sampled surrogate for the ridge `J_λ ≥ α > 0` on the sphere `‖u‖ = η`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RidgeReport {
    pub eta: f64,
    pub samples: usize,
    pub min_j: f64,
    pub mean_j: f64,
    /// `max ∫|u|^r / ‖u‖^r` over the sample.
    pub empirical_c1: f64,
    /// `min (J(u) − η^{p+q} + (C₁/r) η^r)` over the sample.
    pub bound_slack: f64,
    pub values: Vec<f64>,
    pub passed: bool,
}

/// Evaluates `J_λ` on `samples` seeded random fields rescaled to `‖u‖ = η`.
pub fn verify_ridge(e: &ExponentSet, grid: &Grid, eta: f64, samples: usize, seed: u64) -> Result<RidgeReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!("eta must lie in (0, 1), got {eta}")));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample is required".into()));
    }
    let energy = Energy::new(Functional::J, e, grid)?;
    let params = e.nfunction();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(samples);
    let mut empirical_c1: f64 = 0.0;
    for _ in 0..samples {
        let u = ScalarField::random(grid, &mut rng).rescaled_to_norm(eta, &params)?;
        empirical_c1 = empirical_c1.max(u.power_integral(e.r) / eta.powf(e.r));
        values.push(energy.energy(&u).total);
    }
    let floor = eta.powf(e.p + e.q) - empirical_c1 / e.r * eta.powf(e.r);
    let min_j = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean_j = values.iter().sum::<f64>() / samples as f64;
    Ok(RidgeReport {
        eta,
        samples,
        min_j,
        mean_j,
        empirical_c1,
        bound_slack: min_j - floor,
        passed: min_j > 0.0,
        values,
    })
}
