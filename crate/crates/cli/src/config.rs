//! Flat `key=value` run configuration.
//!
//! ```text
//! # reference mountain-pass run
//! N=3
//! p=1.9
//! q=1.05
//! r=3.5
//! lambda=1
//! dims=9,9,9
//! lengths=1,1,1
//! problem=mp
//! seed=42
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. `dims` and
//! `lengths` take one comma-separated entry per axis, or a single entry
//! used on every axis. Unknown or repeated keys are errors.

use std::collections::BTreeMap;
use std::path::Path;

use orlicz_core::{BumpSpec, ExponentSet, Grid, MinimizeOptions, MountainPassConfig, Problem};

pub const KEYS: [&str; 15] = [
    "N",
    "p",
    "q",
    "r",
    "lambda",
    "dims",
    "lengths",
    "problem",
    "bump.t0",
    "bump.innerFraction",
    "seed",
    "residualTol",
    "maxIter",
    "pathPoints",
    "force",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub exponents: ExponentSet,
    pub grid: Grid,
    pub problem: Option<Problem>,
    pub bump: BumpSpec,
    pub seed: u64,
    pub residual_tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub path_points: Option<usize>,
    pub force: bool,
}

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("{key}: cannot parse {value:?}"))
}

fn parse_list<T: std::str::FromStr + Clone>(key: &str, value: &str, n: usize) -> Result<Vec<T>, String> {
    let items = value.split(',').map(|s| parse_number(key, s.trim())).collect::<Result<Vec<T>, String>>()?;
    match items.len() {
        1 => Ok(vec![items[0].clone(); n]),
        len if len == n => Ok(items),
        len => Err(format!("{key}: expected 1 or {n} entries, got {len}")),
    }
}

fn parse_flag(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(format!("{key}: expected true or false, got {other:?}")),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries: BTreeMap<&str, &str> = BTreeMap::new();
        for (number, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| format!("line {}: expected key=value, got {line:?}", number + 1))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(format!("line {}: unknown key {key:?}", number + 1));
            }
            if entries.insert(key, value).is_some() {
                return Err(format!("line {}: duplicate key {key:?}", number + 1));
            }
        }
        let required = |key: &str| entries.get(key).copied().ok_or_else(|| format!("missing required key {key:?}"));

        let n: usize = parse_number("N", required("N")?)?;
        let lambda = match entries.get("lambda") {
            Some(v) => parse_number("lambda", v)?,
            None => 1.0,
        };
        let exponents = ExponentSet::new(
            n,
            parse_number("p", required("p")?)?,
            parse_number("q", required("q")?)?,
            parse_number("r", required("r")?)?,
            lambda,
        )
        .map_err(|e| e.to_string())?;
        let grid =
            Grid::new(parse_list("dims", required("dims")?, n)?, parse_list("lengths", required("lengths")?, n)?)
                .map_err(|e| e.to_string())?;

        let defaults = BumpSpec::default();
        let bump = BumpSpec::new(
            entries.get("bump.t0").map_or(Ok(defaults.t0), |v| parse_number("bump.t0", v))?,
            entries
                .get("bump.innerFraction")
                .map_or(Ok(defaults.inner_fraction), |v| parse_number("bump.innerFraction", v))?,
        )
        .map_err(|e| e.to_string())?;

        let problem = entries.get("problem").map(|v| v.parse::<Problem>().map_err(|e| e.to_string())).transpose()?;
        let residual_tolerance = entries.get("residualTol").map(|v| parse_number("residualTol", v)).transpose()?;
        let max_iterations = entries.get("maxIter").map(|v| parse_number("maxIter", v)).transpose()?;
        let path_points = entries.get("pathPoints").map(|v| parse_number("pathPoints", v)).transpose()?;
        let config = Self {
            exponents,
            grid,
            problem,
            bump,
            seed: entries.get("seed").map_or(Ok(0), |v| parse_number("seed", v))?,
            residual_tolerance,
            max_iterations,
            path_points,
            force: entries.get("force").map_or(Ok(false), |v| parse_flag("force", v))?,
        };
        config.minimize_options().validate().map_err(|e| e.to_string())?;
        config.mountain_pass_config().validate().map_err(|e| e.to_string())?;
        Ok(config)
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn minimize_options(&self) -> MinimizeOptions {
        let mut opts = MinimizeOptions { bump: self.bump, ..Default::default() };
        if let Some(tol) = self.residual_tolerance {
            opts.residual_tolerance = tol;
        }
        if let Some(n) = self.max_iterations {
            opts.max_iterations = n;
        }
        opts
    }

    pub fn mountain_pass_config(&self) -> MountainPassConfig {
        let mut config = MountainPassConfig::default();
        if let Some(tol) = self.residual_tolerance {
            config.residual_tolerance = tol;
        }
        if let Some(n) = self.max_iterations {
            config.max_iterations = n;
        }
        if let Some(n) = self.path_points {
            config.path_points = n;
        }
        config
    }
}
