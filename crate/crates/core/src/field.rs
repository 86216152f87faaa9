//! Nodal scalar fields on an N-dimensional box with zero Dirichlet data,
//! their cell-centre gradients, modulars and Luxemburg norms.
//!
//! Interior nodes are stored row-major (last axis fastest). Each cell is
//! the image of the unit cube under the multilinear interpolant of its
//! `2^N` corner values; the gradient is evaluated at the cell centre, which
//! is the single quadrature point of the discrete energies.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::nfunction::NFunctionParams;

const BOUNDARY: u32 = u32::MAX;

/// Axis-aligned box `Π [0, L_i]` with `dims[i]` interior nodes per axis and
/// spacing `h_i = L_i / (dims[i] + 1)`.
#[derive(Debug, Clone)]
pub struct Grid {
    dims: Vec<usize>,
    lengths: Vec<f64>,
    spacing: Vec<f64>,
    /// Interior node index of every cell corner, `BOUNDARY` on ∂Ω;
    /// `cells × 2^N` entries, corner bit `i` ↔ axis `i`.
    corners: Arc<[u32]>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.lengths == other.lengths
    }
}

impl Grid {
    pub fn new(dims: Vec<usize>, lengths: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.len() != lengths.len() {
            return Err(Error::InvalidParameter(format!(
                "grid needs matching non-empty dims and lengths (got {} and {})",
                dims.len(),
                lengths.len()
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidParameter(format!("every axis needs at least 2 interior nodes, got {d}")));
        }
        if let Some(l) = lengths.iter().find(|&&l| !(l.is_finite() && l > 0.0)) {
            return Err(Error::InvalidParameter(format!("box edge lengths must be positive, got {l}")));
        }
        let n = dims.len();
        if n > 16 {
            return Err(Error::InvalidParameter(format!("dimension {n} is not supported")));
        }
        let nodes: usize = dims.iter().product();
        if nodes >= BOUNDARY as usize {
            return Err(Error::InvalidParameter("grid too large".into()));
        }
        let spacing = dims.iter().zip(&lengths).map(|(&d, &l)| l / (d + 1) as f64).collect();
        let corners = build_corners(&dims).into();
        Ok(Self { dims, lengths, spacing, corners })
    }

    /// Uniform grid with `nodes` interior nodes and edge length `length` on every axis.
    pub fn cube(n: usize, nodes: usize, length: f64) -> Result<Self> {
        Self::new(vec![nodes; n], vec![length; n])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn node_count(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.iter().map(|d| d + 1).product()
    }

    /// `Π h_i`, the quadrature weight of one node and the volume of one cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// `Π L_i`.
    pub fn volume(&self) -> f64 {
        self.lengths.iter().product()
    }

    pub(crate) fn corners_per_cell(&self) -> usize {
        1 << self.dim()
    }

    /// Interior indices of the corners of `cell`, `None` on the boundary.
    pub(crate) fn cell_corners(&self, cell: usize) -> impl Iterator<Item = Option<usize>> + '_ {
        let k = self.corners_per_cell();
        self.corners[cell * k..(cell + 1) * k].iter().map(|&c| (c != BOUNDARY).then_some(c as usize))
    }

    /// Coordinates of interior node `index`.
    pub fn node_position(&self, index: usize) -> Vec<f64> {
        let mut rest = index;
        let mut pos = vec![0.0; self.dim()];
        for axis in (0..self.dim()).rev() {
            let i = rest % self.dims[axis];
            rest /= self.dims[axis];
            pos[axis] = (i + 1) as f64 * self.spacing[axis];
        }
        pos
    }

    /// `∂(∇u)_axis / ∂u_corner` for any cell: `±1 / (h_axis 2^{N−1})`.
    pub(crate) fn gradient_weight(&self, corner: usize, axis: usize) -> f64 {
        let magnitude = 1.0 / (self.spacing[axis] * (1usize << (self.dim() - 1)) as f64);
        if corner >> axis & 1 == 1 {
            magnitude
        } else {
            -magnitude
        }
    }
}

fn build_corners(dims: &[usize]) -> Vec<u32> {
    let n = dims.len();
    let cell_dims: Vec<usize> = dims.iter().map(|d| d + 1).collect();
    let cells: usize = cell_dims.iter().product();
    let mut strides = vec![1usize; n];
    for axis in (0..n.saturating_sub(1)).rev() {
        strides[axis] = strides[axis + 1] * dims[axis + 1];
    }
    let k = 1usize << n;
    let mut out = Vec::with_capacity(cells * k);
    let mut cell = vec![0usize; n];
    for _ in 0..cells {
        for corner in 0..k {
            let mut index = 0usize;
            let mut interior = true;
            for axis in 0..n {
                let node = cell[axis] + (corner >> axis & 1);
                if node == 0 || node > dims[axis] {
                    interior = false;
                    break;
                }
                index += (node - 1) * strides[axis];
            }
            out.push(if interior { index as u32 } else { BOUNDARY });
        }
        for axis in (0..n).rev() {
            cell[axis] += 1;
            if cell[axis] < cell_dims[axis] {
                break;
            }
            cell[axis] = 0;
        }
    }
    out
}

/// Interior nodal values of a field vanishing on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: &Grid) -> Self {
        Self { grid: grid.clone(), values: vec![0.0; grid.node_count()] }
    }

    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::InvalidParameter(format!(
                "expected {} nodal values, got {}",
                grid.node_count(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("nodal values must be finite".into()));
        }
        Ok(Self { grid: grid.clone(), values })
    }

    /// Builds a field from a function of the node coordinates.
    pub fn from_fn(grid: &Grid, f: impl Fn(&[f64]) -> f64) -> Self {
        let values = (0..grid.node_count()).map(|i| f(&grid.node_position(i))).collect();
        Self { grid: grid.clone(), values }
    }

    /// i.i.d. uniform(−1, 1) nodal values.
    pub fn random<R: Rng + ?Sized>(grid: &Grid, rng: &mut R) -> Self {
        let values = (0..grid.node_count()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Self { grid: grid.clone(), values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|v| c * v).collect() }
    }

    /// `self + c · other`.
    pub fn axpy(&self, c: f64, other: &ScalarField) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + c * b).collect();
        Self { grid: self.grid.clone(), values }
    }

    /// Euclidean inner product of the nodal vectors.
    pub fn dot(&self, other: &ScalarField) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    /// Euclidean norm of the nodal vector.
    pub fn euclidean_norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Nodal quadrature of `∫ |u|^s`.
    pub fn power_integral(&self, s: f64) -> f64 {
        self.grid.cell_volume() * self.values.iter().map(|v| v.abs().powf(s)).sum::<f64>()
    }

    /// `‖u‖ = ‖ |∇u| ‖_Φ`, the norm of the Orlicz-Sobolev space.
    pub fn norm(&self, params: &NFunctionParams) -> Result<f64> {
        luxemburg_norm(&gradient(self), params)
    }

    /// Rescales to `‖u‖ = target` by homogeneity of the Luxemburg norm.
    pub fn rescaled_to_norm(&self, target: f64, params: &NFunctionParams) -> Result<Self> {
        let current = self.norm(params)?;
        if current == 0.0 {
            return Err(Error::InvalidParameter("cannot rescale the zero field".into()));
        }
        Ok(self.scaled(target / current))
    }
}

/// One gradient vector per cell, evaluated at the cell centre.
#[derive(Debug, Clone, PartialEq)]
pub struct CellGradientField {
    grid: Grid,
    /// `cells × N`, row-major by cell.
    vectors: Vec<f64>,
}

impl CellGradientField {
    /// Wraps `cells × N` components, row-major by cell.
    pub fn from_vectors(grid: &Grid, vectors: Vec<f64>) -> Result<Self> {
        if vectors.len() != grid.cell_count() * grid.dim() {
            return Err(Error::InvalidParameter(format!(
                "expected {} gradient components, got {}",
                grid.cell_count() * grid.dim(),
                vectors.len()
            )));
        }
        Ok(Self { grid: grid.clone(), vectors })
    }

    /// Every cell carries `c e₁`, so `|∇u| ≡ |c|`. No nodal field with zero
    /// boundary values has this gradient; it exists to test the modular and
    /// norm against closed forms.
    pub fn constant(grid: &Grid, c: f64) -> Self {
        let n = grid.dim();
        let mut vectors = vec![0.0; grid.cell_count() * n];
        for g in vectors.chunks_exact_mut(n) {
            g[0] = c;
        }
        Self { grid: grid.clone(), vectors }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn vector(&self, cell: usize) -> &[f64] {
        let n = self.grid.dim();
        &self.vectors[cell * n..(cell + 1) * n]
    }

    pub fn cell_count(&self) -> usize {
        self.grid.cell_count()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { grid: self.grid.clone(), vectors: self.vectors.iter().map(|v| c * v).collect() }
    }

    pub fn magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.vectors.chunks_exact(self.grid.dim()).map(|g| g.iter().map(|x| x * x).sum::<f64>().sqrt())
    }
}

/// Cell-centre gradient of the multilinear interpolant of `u`.
pub fn gradient(u: &ScalarField) -> CellGradientField {
    let grid = &u.grid;
    let n = grid.dim();
    let mut vectors = vec![0.0; grid.cell_count() * n];
    for (cell, g) in vectors.chunks_exact_mut(n).enumerate() {
        cell_gradient(grid, &u.values, cell, g);
    }
    CellGradientField { grid: grid.clone(), vectors }
}

#[inline]
pub(crate) fn cell_gradient(grid: &Grid, values: &[f64], cell: usize, out: &mut [f64]) {
    out.iter_mut().for_each(|g| *g = 0.0);
    for (corner, node) in grid.cell_corners(cell).enumerate() {
        if let Some(node) = node {
            let v = values[node];
            for (axis, g) in out.iter_mut().enumerate() {
                *g += grid.gradient_weight(corner, axis) * v;
            }
        }
    }
}

/// Fields whose modular `∫ Φ(|·|)` can be evaluated.
pub trait Modular {
    fn quadrature_weight(&self) -> f64;
    /// Pointwise magnitudes at the quadrature points, in a fixed order.
    fn pointwise(&self) -> Vec<f64>;
}

impl Modular for ScalarField {
    fn quadrature_weight(&self) -> f64 {
        self.grid.cell_volume()
    }

    fn pointwise(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.abs()).collect()
    }
}

impl Modular for CellGradientField {
    fn quadrature_weight(&self) -> f64 {
        self.grid.cell_volume()
    }

    fn pointwise(&self) -> Vec<f64> {
        self.magnitudes().collect()
    }
}

/// `Σ w Φ(|f|)`: cell-centre quadrature for gradients, nodal for scalars.
pub fn modular<M: Modular + ?Sized>(field: &M, params: &NFunctionParams) -> f64 {
    modular_of(&field.pointwise(), field.quadrature_weight(), 1.0, params)
}

fn modular_of(magnitudes: &[f64], weight: f64, inv_k: f64, params: &NFunctionParams) -> f64 {
    weight * magnitudes.iter().map(|&m| params.capital_phi(m * inv_k)).sum::<f64>()
}

/// Relative bracket width at which the Luxemburg bisection stops.
const LUXEMBURG_RTOL: f64 = 1e-12;

/// `inf { k > 0 : modular(f / k) ≤ 1 }`, the root of the strictly decreasing
/// map `k ↦ modular(f/k) − 1` located by bracketing and bisection.
pub fn luxemburg_norm<M: Modular + ?Sized>(field: &M, params: &NFunctionParams) -> Result<f64> {
    let magnitudes = field.pointwise();
    let weight = field.quadrature_weight();
    let largest = magnitudes.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(0.0);
    }
    if !largest.is_finite() {
        return Err(Error::NonConvergence { what: "luxemburg_norm bracket", iterations: 0 });
    }
    let excess = |k: f64| modular_of(&magnitudes, weight, 1.0 / k, params) - 1.0;
    let mut lo = largest;
    let mut hi = largest;
    let mut steps = 0;
    while excess(lo) <= 0.0 {
        lo *= 0.5;
        steps += 1;
        if steps > 2100 || lo == 0.0 {
            return Err(Error::NonConvergence { what: "luxemburg_norm bracket", iterations: steps });
        }
    }
    while excess(hi) > 0.0 {
        hi *= 2.0;
        steps += 1;
        if steps > 2100 || !hi.is_finite() {
            return Err(Error::NonConvergence { what: "luxemburg_norm bracket", iterations: steps });
        }
    }
    // excess(lo) > 0 ≥ excess(hi)
    let mut iterations = 0;
    while hi - lo > LUXEMBURG_RTOL * hi {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NonConvergence { what: "luxemburg_norm", iterations });
        }
    }
    Ok(0.5 * (lo + hi))
}
