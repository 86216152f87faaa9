//! Restriction of an energy to the ray `t ↦ t v`.

use crate::admissibility::ExponentSet;
use crate::error::Result;
use crate::field::{gradient, ScalarField};
use crate::functionals::Functional;
use crate::nfunction::NFunctionParams;
use crate::roots::decreasing_sign_change;

/// Precomputed data of `t ↦ E(t v)`; each evaluation costs one pass over
/// the cell gradient magnitudes.
#[derive(Debug, Clone)]
pub(crate) struct RayProfile {
    nfunction: NFunctionParams,
    sign: f64,
    p: f64,
    r: f64,
    lambda: f64,
    volume: f64,
    magnitudes: Vec<f64>,
    /// `∫ |v|^p`
    p_mass: f64,
    /// `∫ |v|^r`
    r_mass: f64,
}

impl RayProfile {
    pub(crate) fn new(kind: Functional, e: &ExponentSet, v: &ScalarField) -> Self {
        let sign = match kind {
            Functional::J => 1.0,
            Functional::I => -1.0,
        };
        Self {
            nfunction: e.nfunction(),
            sign,
            p: e.p,
            r: e.r,
            lambda: e.lambda,
            volume: v.grid().cell_volume(),
            magnitudes: gradient(v).magnitudes().collect(),
            p_mass: v.power_integral(e.p),
            r_mass: v.power_integral(e.r),
        }
    }

    pub(crate) fn p_mass(&self) -> f64 {
        self.p_mass
    }

    /// `E(t v)`.
    pub(crate) fn value(&self, t: f64) -> f64 {
        let phi: f64 = self.magnitudes.iter().map(|&m| self.nfunction.capital_phi(t * m)).sum();
        self.volume * phi
            + self.sign * (self.lambda / self.p * t.powf(self.p) * self.p_mass - t.powf(self.r) / self.r * self.r_mass)
    }

    /// `d/dt E(t v) = ⟨E'(t v), v⟩`.
    pub(crate) fn slope(&self, t: f64) -> f64 {
        let phi: f64 = self.magnitudes.iter().map(|&m| self.nfunction.phi(t * m) * m).sum();
        self.volume * phi
            + self.sign * (self.lambda * t.powf(self.p - 1.0) * self.p_mass - t.powf(self.r - 1.0) * self.r_mass)
    }

    /// `slope(t) / t^{p+q−1}` for J: strictly decreasing when `r > p + q`.
    fn scaled_j_slope(&self, t: f64) -> f64 {
        let pq = self.nfunction.p_plus_q();
        let phi: f64 = self
            .magnitudes
            .iter()
            .map(|&m| {
                let x = (t * m).powf(self.nfunction.q());
                if x == 0.0 {
                    m.powf(pq)
                } else {
                    x.ln_1p() / t.powf(self.nfunction.q()) * m.powf(self.p)
                }
            })
            .sum();
        self.volume * phi + self.lambda * self.p_mass * t.powf(-self.nfunction.q()) - t.powf(self.r - pq) * self.r_mass
    }

    /// Maximiser of `t ↦ J(t v)` sampled on `points` equispaced nodes of
    /// `[0, end]` and refined as the root of the scaled slope inside the
    /// bracket around the best sample. Requires `value(end) < 0`.
    pub(crate) fn peak_on_path(&self, end: f64, points: usize) -> Result<f64> {
        let step = end / (points - 1) as f64;
        let best = (1..points - 1).map(|k| (k, self.value(k as f64 * step))).fold((0, 0.0), |acc, (k, v)| {
            if v > acc.1 {
                (k, v)
            } else {
                acc
            }
        });
        let hi = (best.0 + 1) as f64 * step;
        let lo = if best.0 == 0 { hi * 1e-12 } else { (best.0 - 1) as f64 * step };
        decreasing_sign_change(|t| self.scaled_j_slope(t), lo, hi, 1e-15, 0.0, "ray maximum")
    }
}
