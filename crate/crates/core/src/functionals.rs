//! Discrete energies and their exact nodal gradients.
//!
//! ```text
//! J_λ(u) = ∫ Φ(|∇u|) + (λ/p) ∫ |u|^p − (1/r) ∫ |u|^r
//! I_λ(u) = ∫ Φ(|∇u|) − (λ/p) ∫ |u|^p + (1/r) ∫ |u|^r
//! ```
//!
//! The gradient term uses the cell-centre quadrature of [`crate::field`];
//! the power terms use nodal quadrature. Residual component `i` is the exact
//! partial derivative of the discrete energy with respect to nodal value `i`.

use serde::{Deserialize, Serialize};

use crate::admissibility::ExponentSet;
use crate::error::{Error, Result};
use crate::field::{cell_gradient, Grid, ScalarField};
use crate::nfunction::NFunctionParams;

/// Which of the two energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Functional {
    /// `J_λ`, with mountain-pass geometry.
    J,
    /// `I_λ`, coercive.
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    /// `∫ Φ(|∇u|)`
    #[serde(rename = "phiTerm")]
    pub phi_term: f64,
    /// `(λ/p) ∫ |u|^p`
    #[serde(rename = "pTerm")]
    pub p_term: f64,
    /// `(1/r) ∫ |u|^r`
    #[serde(rename = "rTerm")]
    pub r_term: f64,
    pub total: f64,
}

/// Nodal components of the discrete Fréchet derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualField {
    grid: Grid,
    values: Vec<f64>,
}

impl ResidualField {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `⟨J'(u), v⟩ = Σ_i r_i v_i`.
    pub fn pairing(&self, v: &ScalarField) -> f64 {
        self.values.iter().zip(v.values()).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|v| c * v).collect() }
    }

    /// The residual as a nodal field, e.g. to use as a descent direction.
    pub fn to_field(&self) -> ScalarField {
        ScalarField::from_values(&self.grid, self.values.clone()).expect("residual shape matches grid")
    }
}

/// `(Π h_i)^{1/2} ‖r‖₂`, the stopping measure of the solvers.
pub fn residual_norm(r: &ResidualField) -> f64 {
    r.grid.cell_volume().sqrt() * r.values.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `|⟨r, v⟩| · (Π h_i)^{1/2} / ‖v‖₂`; bounded by [`residual_norm`] through
/// Cauchy–Schwarz, so a converged solve keeps it below its tolerance.
pub fn weak_form_defect(r: &ResidualField, v: &ScalarField) -> f64 {
    r.pairing(v).abs() * r.grid.cell_volume().sqrt() / v.euclidean_norm()
}

/// `sign(u) |u|^{s−1}`, i.e. `|u|^{s−2} u` extended by 0 at `u = 0`.
#[inline]
fn signed_power(u: f64, s_minus_one: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u.signum() * u.abs().powf(s_minus_one)
    }
}

/// Evaluator for one energy on one grid.
#[derive(Debug, Clone)]
pub struct Energy {
    kind: Functional,
    exponents: ExponentSet,
    nfunction: NFunctionParams,
    grid: Grid,
    /// `gradient_weight(corner, axis)`, corner-major.
    weights: Vec<f64>,
}

impl Energy {
    pub fn new(kind: Functional, exponents: &ExponentSet, grid: &Grid) -> Result<Self> {
        if grid.dim() != exponents.n {
            return Err(Error::DimensionMismatch { grid: grid.dim(), exponents: exponents.n });
        }
        let n = grid.dim();
        let weights = (0..grid.corners_per_cell())
            .flat_map(|corner| (0..n).map(move |axis| (corner, axis)))
            .map(|(corner, axis)| grid.gradient_weight(corner, axis))
            .collect();
        Ok(Self { kind, exponents: *exponents, nfunction: exponents.nfunction(), grid: grid.clone(), weights })
    }

    pub fn kind(&self) -> Functional {
        self.kind
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn nfunction(&self) -> &NFunctionParams {
        &self.nfunction
    }

    /// `+1` for J (λ-term added, r-term subtracted), `−1` for I.
    fn sign(&self) -> f64 {
        match self.kind {
            Functional::J => 1.0,
            Functional::I => -1.0,
        }
    }

    fn check(&self, u: &ScalarField) {
        assert_eq!(u.grid(), &self.grid, "field lives on a different grid");
    }

    pub fn energy(&self, u: &ScalarField) -> EnergyBreakdown {
        self.check(u);
        let n = self.grid.dim();
        let mut g = vec![0.0; n];
        let mut phi_sum = 0.0;
        for cell in 0..self.grid.cell_count() {
            cell_gradient(&self.grid, u.values(), cell, &mut g);
            let magnitude = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            phi_sum += self.nfunction.capital_phi(magnitude);
        }
        let vol = self.grid.cell_volume();
        let e = &self.exponents;
        let (mut p_sum, mut r_sum) = (0.0, 0.0);
        for &v in u.values() {
            let a = v.abs();
            if a > 0.0 {
                p_sum += a.powf(e.p);
                r_sum += a.powf(e.r);
            }
        }
        let phi_term = vol * phi_sum;
        let p_term = e.lambda / e.p * vol * p_sum;
        let r_term = vol * r_sum / e.r;
        let s = self.sign();
        EnergyBreakdown { phi_term, p_term, r_term, total: phi_term + s * (p_term - r_term) }
    }

    pub fn residual(&self, u: &ScalarField) -> ResidualField {
        self.energy_and_residual(u).1
    }

    /// Energy and residual in one sweep over the cells.
    pub fn energy_and_residual(&self, u: &ScalarField) -> (EnergyBreakdown, ResidualField) {
        self.check(u);
        let n = self.grid.dim();
        let vol = self.grid.cell_volume();
        let mut out = vec![0.0; self.grid.node_count()];
        let mut g = vec![0.0; n];
        let mut phi_sum = 0.0;
        for cell in 0..self.grid.cell_count() {
            cell_gradient(&self.grid, u.values(), cell, &mut g);
            let magnitude = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            phi_sum += self.nfunction.capital_phi(magnitude);
            let a = vol * self.nfunction.phi_over_t(magnitude);
            if a == 0.0 {
                continue;
            }
            for (corner, node) in self.grid.cell_corners(cell).enumerate() {
                if let Some(node) = node {
                    let w = &self.weights[corner * n..(corner + 1) * n];
                    out[node] += a * w.iter().zip(&g).map(|(w, g)| w * g).sum::<f64>();
                }
            }
        }
        let e = &self.exponents;
        let s = self.sign();
        let (mut p_sum, mut r_sum) = (0.0, 0.0);
        for (r, &v) in out.iter_mut().zip(u.values()) {
            let a = v.abs();
            if a > 0.0 {
                p_sum += a.powf(e.p);
                r_sum += a.powf(e.r);
            }
            *r += s * vol * (e.lambda * signed_power(v, e.p - 1.0) - signed_power(v, e.r - 1.0));
        }
        let phi_term = vol * phi_sum;
        let p_term = e.lambda / e.p * vol * p_sum;
        let r_term = vol * r_sum / e.r;
        let energy = EnergyBreakdown { phi_term, p_term, r_term, total: phi_term + s * (p_term - r_term) };
        (energy, ResidualField { grid: self.grid.clone(), values: out })
    }
}

fn evaluate(kind: Functional, e: &ExponentSet, u: &ScalarField) -> Result<Energy> {
    Energy::new(kind, e, u.grid())
}

pub fn j_energy(e: &ExponentSet, u: &ScalarField) -> Result<EnergyBreakdown> {
    Ok(evaluate(Functional::J, e, u)?.energy(u))
}

pub fn i_energy(e: &ExponentSet, u: &ScalarField) -> Result<EnergyBreakdown> {
    Ok(evaluate(Functional::I, e, u)?.energy(u))
}

pub fn j_residual(e: &ExponentSet, u: &ScalarField) -> Result<ResidualField> {
    Ok(evaluate(Functional::J, e, u)?.residual(u))
}

pub fn i_residual(e: &ExponentSet, u: &ScalarField) -> Result<ResidualField> {
    Ok(evaluate(Functional::I, e, u)?.residual(u))
}
