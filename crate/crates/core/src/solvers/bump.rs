use serde::{Deserialize, Serialize};

use crate::admissibility::ExponentSet;
use crate::error::{Error, Result};
use crate::field::{gradient, modular, Grid, ScalarField};

/// Plateau function `u₁`: equal to `t0` on a centred box occupying
/// `inner_fraction` of each edge, decaying to 0 by a per-axis smoothstep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpSpec {
    pub t0: f64,
    #[serde(rename = "innerFraction")]
    pub inner_fraction: f64,
}

impl Default for BumpSpec {
    fn default() -> Self {
        Self { t0: 2.0, inner_fraction: 0.5 }
    }
}

fn smoothstep(z: f64) -> f64 {
    let z = z.clamp(0.0, 1.0);
    z * z * (3.0 - 2.0 * z)
}

impl BumpSpec {
    pub fn new(t0: f64, inner_fraction: f64) -> Result<Self> {
        let spec = Self { t0, inner_fraction };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t0 > 1.0) {
            return Err(Error::InvalidParameter(format!("bump t0 must exceed 1, got {}", self.t0)));
        }
        if !(self.inner_fraction > 0.0 && self.inner_fraction < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "bump innerFraction must lie in (0, 1), got {}",
                self.inner_fraction
            )));
        }
        Ok(())
    }

    pub fn field(&self, grid: &Grid) -> Result<ScalarField> {
        self.validate()?;
        let lengths = grid.lengths().to_vec();
        let frac = self.inner_fraction;
        Ok(ScalarField::from_fn(grid, |x| {
            let profile: f64 = x
                .iter()
                .zip(&lengths)
                .map(|(&xi, &l)| {
                    let half = 0.5 * l;
                    let inner = frac * half;
                    smoothstep((half - (xi - half).abs()) / (half - inner))
                })
                .product();
            self.t0 * profile
        }))
    }
}

/// Zero of the affine map `λ ↦ I_λ(u₁)`:
/// `λ̂ = p (∫Φ(|∇u₁|) + (1/r)∫|u₁|^r) / ∫|u₁|^p`. The `λ` of `e` is ignored.
pub fn estimate_lambda_star(e: &ExponentSet, grid: &Grid, bump: &BumpSpec) -> Result<f64> {
    if grid.dim() != e.n {
        return Err(Error::DimensionMismatch { grid: grid.dim(), exponents: e.n });
    }
    let u1 = bump.field(grid)?;
    let p_mass = u1.power_integral(e.p);
    if p_mass == 0.0 {
        return Err(Error::DegenerateBump);
    }
    let gradient_term = modular(&gradient(&u1), &e.nfunction());
    Ok(e.p * (gradient_term + u1.power_integral(e.r) / e.r) / p_mass)
}
