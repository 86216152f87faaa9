//! Global minimisation of `I_λ`, the bump-function estimate of `λ⋆`, and a
//! mountain-pass search for critical points of `J_λ`.

mod bump;
mod descent;
pub mod lattice;
mod mountain;
mod ray;
mod ridge;

use serde::{Deserialize, Serialize};

use crate::field::ScalarField;

pub use bump::{estimate_lambda_star, BumpSpec};
pub use descent::{minimize_i, MinimizeOptions};
pub use mountain::{mountain_pass, MountainPassConfig};
pub use ridge::{verify_ridge, RidgeReport};

/// Outcome of a solve. A budget or stagnation stop is reported through
/// `converged = false` together with the last iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub u: ScalarField,
    pub energy: f64,
    pub residual: f64,
    pub iterations: usize,
    pub luxemburg_norm: f64,
    pub converged: bool,
    /// Admissibility check bypassed.
    pub forced: bool,
    /// Energy after each accepted iteration, starting with the initial point
    /// of the branch that was returned.
    pub history: Vec<f64>,
    pub stop: StopReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StopReason {
    Converged,
    BudgetExhausted,
    /// Line search could not make progress above the step tolerance.
    Stagnated,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::BudgetExhausted => "budgetExhausted",
            StopReason::Stagnated => "stagnated",
        }
    }
}
