//! Exhaustive lattice minimisation of `I_λ` on one-dimensional grids.
//!
//! On a 1D grid the discrete energy is a sum of node terms and nearest
//! neighbour cell terms, so the minimum over the product lattice
//! `levels^n` is found exactly by dynamic programming along the chain in
//! `O(n · levels²)` instead of `levels^n` evaluations.

use crate::admissibility::ExponentSet;
use crate::error::{Error, Result};
use crate::field::{Grid, ScalarField};

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeMinimum {
    pub energy: f64,
    pub u: ScalarField,
}

/// Minimum of `I_λ` over nodal values in `{lo, lo + step, …, hi}`.
pub fn lattice_minimum(e: &ExponentSet, grid: &Grid, lo: f64, hi: f64, step: f64) -> Result<LatticeMinimum> {
    if grid.dim() != 1 || e.n != 1 {
        return Err(Error::InvalidParameter("lattice search needs a one-dimensional grid".into()));
    }
    if !(step > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!("bad lattice [{lo}, {hi}] step {step}")));
    }
    let count = ((hi - lo) / step).round() as usize + 1;
    let levels: Vec<f64> = (0..count).map(|k| lo + k as f64 * step).collect();
    let h = grid.spacing()[0];
    let params = e.nfunction();
    let cell = |a: f64, b: f64| h * params.capital_phi((b - a).abs() / h);
    let node: Vec<f64> =
        levels.iter().map(|&x| h * (x.abs().powf(e.r) / e.r - e.lambda / e.p * x.abs().powf(e.p))).collect();

    let nodes = grid.node_count();
    let mut cost: Vec<f64> = levels.iter().zip(&node).map(|(&x, &n)| cell(0.0, x) + n).collect();
    let mut parent = vec![vec![0usize; count]; nodes];
    for choice in parent.iter_mut().skip(1) {
        let next: Vec<f64> = (0..count)
            .map(|k| {
                let (j, c) = (0..count)
                    .map(|j| (j, cost[j] + cell(levels[j], levels[k])))
                    .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
                choice[k] = j;
                c + node[k]
            })
            .collect();
        cost = next;
    }
    let (mut k, energy) = (0..count).map(|k| (k, cost[k] + cell(levels[k], 0.0))).fold((0, f64::INFINITY), |acc, x| {
        if x.1 < acc.1 {
            x
        } else {
            acc
        }
    });
    let mut values = vec![0.0; nodes];
    for i in (0..nodes).rev() {
        values[i] = levels[k];
        k = parent[i][k];
    }
    Ok(LatticeMinimum { energy, u: ScalarField::from_values(grid, values)? })
}
