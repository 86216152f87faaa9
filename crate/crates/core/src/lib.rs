//! The N-function `Φ(t) = ∫₀ᵗ log(1+s^q) s^{p−1} ds`, its Orlicz-space
//! machinery on box grids, and solvers for the Dirichlet problems driven by
//! `−div(log(1+|∇u|^q)|∇u|^{p−2}∇u)`.
//!
//! [`mountain_pass`] looks for the positive-energy critical point of the
//! `J_λ` energy; [`minimize_i`] finds the negative-energy minimiser of `I_λ`
//! once `λ` exceeds the bump estimate from [`estimate_lambda_star`].

pub mod admissibility;
pub mod error;
pub mod field;
pub mod functionals;
pub mod json;
pub mod nfunction;
pub mod quadrature;
pub mod roots;
pub mod solution;
pub mod solvers;
pub mod verify;

pub use admissibility::{check_admissible, critical_exponent, AdmissibilityReport, ExponentSet};
pub use error::{Error, Result};
pub use field::{gradient, luxemburg_norm, modular, CellGradientField, Grid, ScalarField};
pub use functionals::{
    i_energy, i_residual, j_energy, j_residual, residual_norm, weak_form_defect, Energy, EnergyBreakdown, Functional,
    ResidualField,
};
pub use nfunction::NFunctionParams;
pub use solution::{Problem, SolutionFile};
pub use solvers::{
    estimate_lambda_star, minimize_i, mountain_pass, verify_ridge, BumpSpec, MinimizeOptions, MountainPassConfig,
    RidgeReport, SolveResult, StopReason,
};
pub use verify::{Suite, VerifyOptions, VerifySummary};
