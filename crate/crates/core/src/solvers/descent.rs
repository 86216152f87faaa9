use serde::{Deserialize, Serialize};

use super::bump::BumpSpec;
use super::ray::RayProfile;
use super::{SolveResult, StopReason};
use crate::admissibility::{require_admissible, ExponentSet};
use crate::error::{Error, Result};
use crate::field::{Grid, ScalarField};
use crate::functionals::{residual_norm, Energy, Functional};
use crate::roots::solve_increasing;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimizeOptions {
    pub residual_tolerance: f64,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub armijo_constant: f64,
    pub backtrack_factor: f64,
    /// Shape of the bump restart.
    pub bump: BumpSpec,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            residual_tolerance: 1e-6,
            max_iterations: 50_000,
            step_tolerance: 1e-12,
            armijo_constant: 1e-4,
            backtrack_factor: 0.5,
            bump: BumpSpec::default(),
        }
    }
}

impl MinimizeOptions {
    pub fn validate(&self) -> Result<()> {
        validate_line_search(
            self.residual_tolerance,
            self.step_tolerance,
            self.armijo_constant,
            self.backtrack_factor,
        )?;
        self.bump.validate()
    }
}

pub(super) fn validate_line_search(residual: f64, step: f64, armijo: f64, backtrack: f64) -> Result<()> {
    if !(residual > 0.0 && residual.is_finite()) {
        return Err(Error::InvalidParameter(format!("residual tolerance must be positive, got {residual}")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!("step tolerance must be positive, got {step}")));
    }
    if !(armijo > 0.0 && armijo < 1.0) {
        return Err(Error::InvalidParameter(format!("Armijo constant must lie in (0, 1), got {armijo}")));
    }
    if !(backtrack > 0.0 && backtrack < 1.0) {
        return Err(Error::InvalidParameter(format!("backtrack factor must lie in (0, 1), got {backtrack}")));
    }
    Ok(())
}

pub(super) struct Branch {
    pub u: ScalarField,
    pub energy: f64,
    pub residual: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
    pub stop: StopReason,
}

/// Steepest descent in the Euclidean nodal metric. The first trial step of
/// each iteration is the Barzilai–Borwein step of the previous one; Armijo
/// backtracking keeps the energy sequence monotone.
fn descend(energy: &Energy, start: ScalarField, opts: &MinimizeOptions) -> Branch {
    let mut u = start;
    let (e0, mut r) = energy.energy_and_residual(&u);
    let mut current = e0.total;
    let mut history = vec![current];
    let mut alpha = f64::NAN;
    let mut iterations = 0;
    let stop = loop {
        let res = residual_norm(&r);
        if res < opts.residual_tolerance {
            break StopReason::Converged;
        }
        if iterations >= opts.max_iterations {
            break StopReason::BudgetExhausted;
        }
        let g = r.to_field();
        let gg = g.dot(&g);
        let g_norm = gg.sqrt();
        let scale = u.euclidean_norm().max(1.0);
        if !alpha.is_finite() {
            alpha = 1e-2 * scale / g_norm;
        }
        let accepted = loop {
            let trial = u.axpy(-alpha, &g);
            let value = energy.energy(&trial).total;
            if value <= current - opts.armijo_constant * alpha * gg {
                break Some((trial, value));
            }
            alpha *= opts.backtrack_factor;
            if alpha * g_norm <= opts.step_tolerance * scale {
                break None;
            }
        };
        let Some((next, value)) = accepted else {
            break StopReason::Stagnated;
        };
        let r_next = energy.residual(&next);
        // s = −α g, y = r_next − r
        let sy: f64 =
            -alpha * r_next.values().iter().zip(r.values()).zip(g.values()).map(|((a, b), c)| (a - b) * c).sum::<f64>();
        let ss = alpha * alpha * gg;
        alpha = if sy > 0.0 { ss / sy } else { 2.0 * alpha };
        u = next;
        r = r_next;
        current = value;
        history.push(current);
        iterations += 1;
    };
    let residual = residual_norm(&r);
    Branch { u, energy: current, residual, iterations, history, stop }
}

/// Minimiser of `s ↦ I_λ(s u₁)` over `s ≥ 0`; `None` when it is `s = 0`.
///
/// `I'(s u₁)·u₁ / s^{p−1} + λ∫|u₁|^p` is strictly increasing in `s` and
/// vanishes at 0, so the optimal scale solves it equal to `λ∫|u₁|^p`.
fn optimal_bump_scale(e: &ExponentSet, u1: &ScalarField) -> Result<Option<f64>> {
    let profile = RayProfile::new(Functional::I, e, u1);
    let target = e.lambda * profile.p_mass();
    if target <= 0.0 {
        return Ok(None);
    }
    let f = |s: f64| profile.slope(s) / s.powf(e.p - 1.0) + target;
    let h = 1e-6;
    let df = |s: f64| (f(s * (1.0 + h)) - f(s * (1.0 - h))) / (2.0 * h * s);
    solve_increasing(f, df, target, 1.0, 1e-12, "bump scale").map(Some)
}

/// Global minimisation of `I_λ` by multi-start descent from `init`, from 0
/// and from the optimally scaled bump of `opts.bump`; the lowest final
/// energy wins, ties going to the earlier start.
pub fn minimize_i(
    e: &ExponentSet,
    grid: &Grid,
    init: &ScalarField,
    opts: &MinimizeOptions,
    force: bool,
) -> Result<SolveResult> {
    opts.validate()?;
    let forced = require_admissible(e, force)?;
    let energy = Energy::new(Functional::I, e, grid)?;
    if init.grid() != grid {
        return Err(Error::InvalidParameter("initial field lives on a different grid".into()));
    }
    let mut starts = Vec::new();
    if !init.is_zero() {
        starts.push(init.clone());
    }
    starts.push(ScalarField::zeros(grid));
    let u1 = opts.bump.field(grid)?;
    if let Some(s) = optimal_bump_scale(e, &u1)? {
        starts.push(u1.scaled(s));
    }
    let mut best: Option<Branch> = None;
    for start in starts {
        let branch = descend(&energy, start, opts);
        if best.as_ref().map_or(true, |b| branch.energy < b.energy) {
            best = Some(branch);
        }
    }
    let best = best.expect("at least the zero start");
    let luxemburg_norm = best.u.norm(&e.nfunction())?;
    Ok(SolveResult {
        converged: best.stop == StopReason::Converged,
        u: best.u,
        energy: best.energy,
        residual: best.residual,
        iterations: best.iterations,
        luxemburg_norm,
        forced,
        history: best.history,
        stop: best.stop,
    })
}
