//! JSON solution files.
//!
//! ```json
//! { "version": 1,
//!   "exponents": { "N": 3, "p": 1.9, "q": 1.05, "r": 3.5, "lambda": 1.0 },
//!   "grid": { "dims": [9, 9, 9], "lengths": [1.0, 1.0, 1.0] },
//!   "problem": "mp",
//!   "values": [ ... ],
//!   "diagnostics": { "energy": ..., "residual": ..., "iterations": ..., "norm": ... } }
//! ```
//!
//! `values` holds the interior nodal values in row-major order (last axis
//! fastest). Floats are written with 17 significant digits, so reading a
//! file back reproduces every value bit for bit.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::admissibility::ExponentSet;
use crate::error::{Error, Result};
use crate::field::{Grid, ScalarField};
use crate::solvers::{SolveResult, StopReason};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Problem {
    /// Global minimisation of `I_λ`.
    #[serde(rename = "min")]
    Min,
    /// Mountain-pass critical point of `J_λ`.
    #[serde(rename = "mp")]
    MountainPass,
}

impl Problem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Problem::Min => "min",
            Problem::MountainPass => "mp",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Problem::Min),
            "mp" => Ok(Problem::MountainPass),
            other => Err(Error::InvalidParameter(format!("problem must be \"min\" or \"mp\", got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dims: Vec<usize>,
    pub lengths: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub energy: f64,
    pub residual: f64,
    pub iterations: usize,
    pub norm: f64,
    pub converged: bool,
    pub forced: bool,
    pub stop: StopReason,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub version: u32,
    pub exponents: ExponentSet,
    pub grid: GridSpec,
    pub problem: Problem,
    pub values: Vec<f64>,
    pub diagnostics: Diagnostics,
}

impl SolutionFile {
    pub fn from_result(exponents: &ExponentSet, problem: Problem, result: &SolveResult) -> Self {
        let grid = result.u.grid();
        Self {
            version: FORMAT_VERSION,
            exponents: *exponents,
            grid: GridSpec { dims: grid.dims().to_vec(), lengths: grid.lengths().to_vec() },
            problem,
            values: result.u.values().to_vec(),
            diagnostics: Diagnostics {
                energy: result.energy,
                residual: result.residual,
                iterations: result.iterations,
                norm: result.luxemburg_norm,
                converged: result.converged,
                forced: result.forced,
                stop: result.stop,
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        crate::json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))
    }

    /// Parses and validates a document: version, exponents, grid and the
    /// number of nodal values.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {}", file.version)));
        }
        let e = &file.exponents;
        ExponentSet::new(e.n, e.p, e.q, e.r, e.lambda)?;
        file.field()?;
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.dims.clone(), self.grid.lengths.clone())
    }

    pub fn field(&self) -> Result<ScalarField> {
        let grid = self.grid()?;
        if grid.dim() != self.exponents.n {
            return Err(Error::DimensionMismatch { grid: grid.dim(), exponents: self.exponents.n });
        }
        ScalarField::from_values(&grid, self.values.clone())
    }
}
