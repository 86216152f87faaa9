use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::descent::validate_line_search;
use super::ray::RayProfile;
use super::{SolveResult, StopReason};
use crate::admissibility::{require_admissible, ExponentSet};
use crate::error::{Error, Result};
use crate::field::{Grid, ScalarField};
use crate::functionals::{residual_norm, Energy, Functional, ResidualField};

/// Doublings allowed when searching for a negative-energy endpoint.
const MAX_DOUBLINGS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MountainPassConfig {
    pub path_points: usize,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub residual_tolerance: f64,
    pub armijo_constant: f64,
    pub backtrack_factor: f64,
}

impl Default for MountainPassConfig {
    fn default() -> Self {
        Self {
            path_points: 20,
            max_iterations: 2000,
            step_tolerance: 1e-12,
            residual_tolerance: 1e-6,
            armijo_constant: 1e-4,
            backtrack_factor: 0.5,
        }
    }
}

impl MountainPassConfig {
    pub fn validate(&self) -> Result<()> {
        if self.path_points < 3 {
            return Err(Error::InvalidParameter(format!("pathPoints must be at least 3, got {}", self.path_points)));
        }
        validate_line_search(self.residual_tolerance, self.step_tolerance, self.armijo_constant, self.backtrack_factor)
    }
}

/// Straight path `k/(m−1) · end · v`, `k = 0..m`, from 0 to a point of
/// negative energy along the direction `v`.
struct RayPath {
    direction: ScalarField,
    end: f64,
}

impl RayPath {
    /// Doubles `start` until `J(end · v) < 0`.
    fn through(e: &ExponentSet, direction: ScalarField, start: f64) -> Result<(Self, RayProfile)> {
        let profile = RayProfile::new(Functional::J, e, &direction);
        let mut end = start;
        for _ in 0..MAX_DOUBLINGS {
            if profile.value(end) < 0.0 {
                return Ok((Self { direction, end }, profile));
            }
            end *= 2.0;
        }
        Err(Error::GeometryFailure { scale: end })
    }

    /// Path maximiser, refined off the sample points.
    fn peak(&self, profile: &RayProfile, points: usize) -> Result<ScalarField> {
        let t = profile.peak_on_path(self.end, points)?;
        Ok(self.direction.scaled(t))
    }
}

/// Mountain-pass search for a critical point of `J_λ` with positive energy.
///
/// The path from 0 to a negative-energy endpoint is kept straight: at each
/// iteration its maximiser `u` is moved by an Armijo-damped steepest-descent
/// step, the path is rebuilt through the moved point (same point count,
/// equispaced, with a fresh negative endpoint) and its new maximiser is
/// located. The search stops when the maximiser's residual norm falls below
/// the tolerance.
pub fn mountain_pass(
    e: &ExponentSet,
    grid: &Grid,
    config: &MountainPassConfig,
    seed: u64,
    force: bool,
) -> Result<SolveResult> {
    config.validate()?;
    let forced = require_admissible(e, force)?;
    let energy = Energy::new(Functional::J, e, grid)?;
    let params = e.nfunction();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let direction = ScalarField::random(grid, &mut rng).rescaled_to_norm(1.0, &params)?;

    let (mut path, profile) = RayPath::through(e, direction, 1.0)?;
    let mut u = path.peak(&profile, config.path_points)?;
    let (e0, mut r) = energy.energy_and_residual(&u);
    let mut current = e0.total;
    let mut history = vec![current];
    let mut alpha = f64::NAN;
    let mut iterations = 0;

    let stop = loop {
        if residual_norm(&r) < config.residual_tolerance {
            break StopReason::Converged;
        }
        if iterations >= config.max_iterations {
            break StopReason::BudgetExhausted;
        }
        let g = r.to_field();
        let gg = g.dot(&g);
        let g_norm = gg.sqrt();
        let scale = u.euclidean_norm();
        if !alpha.is_finite() {
            alpha = 1e-2 * scale / g_norm;
        }
        let accepted = loop {
            let moved = u.axpy(-alpha, &g);
            // Rebuilt paths start their endpoint search at half the old length.
            let (trial_path, profile) = RayPath::through(e, moved, 0.5 * path.end.max(1.0))?;
            let peak = trial_path.peak(&profile, config.path_points)?;
            let value = energy.energy(&peak).total;
            if value <= current - config.armijo_constant * alpha * gg {
                break Some((trial_path, peak, value));
            }
            alpha *= config.backtrack_factor;
            if alpha * g_norm <= config.step_tolerance * scale {
                break None;
            }
        };
        let Some((next_path, next, value)) = accepted else {
            break StopReason::Stagnated;
        };
        let r_next = energy.residual(&next);
        alpha = barzilai_borwein(&u, &next, &r, &r_next).unwrap_or(2.0 * alpha);
        path = next_path;
        u = next;
        r = r_next;
        current = value;
        history.push(current);
        iterations += 1;
    };
    let luxemburg_norm = u.norm(&params)?;
    Ok(SolveResult {
        residual: residual_norm(&r),
        converged: stop == StopReason::Converged,
        u,
        energy: current,
        iterations,
        luxemburg_norm,
        forced,
        history,
        stop,
    })
}

/// `s·s / s·y` with `s = u_next − u`, `y = r_next − r`, when positive.
fn barzilai_borwein(u: &ScalarField, next: &ScalarField, r: &ResidualField, r_next: &ResidualField) -> Option<f64> {
    let (mut ss, mut sy) = (0.0, 0.0);
    for (((a, b), c), d) in next.values().iter().zip(u.values()).zip(r_next.values()).zip(r.values()) {
        let s = a - b;
        ss += s * s;
        sy += s * (c - d);
    }
    (sy > 0.0 && ss > 0.0).then(|| ss / sy)
}
