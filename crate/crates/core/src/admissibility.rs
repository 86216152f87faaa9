//! Exponent hypotheses for the two existence results and the critical
//! Sobolev-type exponent `(Np − N + p)/(N − p)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nfunction::NFunctionParams;

/// Exponents `(N, p, q, r, λ)` of the Dirichlet problems.
///
/// Construction only checks that the values are usable by the kernels
/// (`N ≥ 1`, `p > 1`, `q ≥ 1`, `r > 1`, `λ ≥ 0`, all finite); the strict
/// hypotheses of the existence theory are reported by [`check_admissible`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentSet {
    #[serde(rename = "N")]
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub lambda: f64,
}

impl ExponentSet {
    pub fn new(n: usize, p: f64, q: f64, r: f64, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        if !(r.is_finite() && r > 1.0) {
            return Err(Error::InvalidParameter(format!("r must be finite and > 1, got {r}")));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be finite and >= 0, got {lambda}")));
        }
        NFunctionParams::new(p, q)?;
        Ok(Self { n, p, q, r, lambda })
    }

    pub fn nfunction(&self) -> NFunctionParams {
        NFunctionParams::new(self.p, self.q).expect("validated at construction")
    }

    /// Same exponents with a different `λ`.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.n, self.p, self.q, self.r, lambda)
    }
}

/// `(Np − N + p)/(N − p)`; requires `N > p`.
pub fn critical_exponent(n: usize, p: f64) -> Result<f64> {
    let nf = n as f64;
    if !(nf > p) {
        return Err(Error::DimensionTooSmall { n, p });
    }
    Ok((nf * p - nf + p) / (nf - p))
}

/// One hypothesis of the report, with `slack = rhs − lhs` for a strict
/// inequality `lhs < rhs` (positive when satisfied).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub passed: bool,
    pub slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub exponents: ExponentSet,
    #[serde(rename = "criticalExponent")]
    pub critical_exponent: Option<f64>,
    pub conditions: Vec<Condition>,
    pub admissible: bool,
}

impl AdmissibilityReport {
    pub fn violations(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed)
    }

    /// Comma-separated names of the failed conditions.
    pub fn violation_summary(&self) -> String {
        self.violations().map(|c| c.name).collect::<Vec<_>>().join(", ")
    }
}

/// Evaluates `p,q > 1`, `p+q < N`, `p+q < r`, `r < (Np−N+p)/(N−p)` and
/// `N > p` with zero tolerance.
pub fn check_admissible(e: &ExponentSet) -> AdmissibilityReport {
    let nf = e.n as f64;
    let crit = critical_exponent(e.n, e.p).ok();
    let strict = |name, lhs: f64, rhs: f64| Condition { name, passed: lhs < rhs, slack: Some(rhs - lhs) };
    let pq_slack = (e.p - 1.0).min(e.q - 1.0);
    let conditions = vec![
        Condition { name: "p,q>1", passed: e.p > 1.0 && e.q > 1.0, slack: Some(pq_slack) },
        strict("p+q<N", e.p + e.q, nf),
        strict("p+q<r", e.p + e.q, e.r),
        match crit {
            Some(c) => strict("r<critical", e.r, c),
            None => Condition { name: "r<critical", passed: false, slack: None },
        },
        strict("N>p", e.p, nf),
    ];
    let admissible = conditions.iter().all(|c| c.passed);
    AdmissibilityReport { exponents: *e, critical_exponent: crit, conditions, admissible }
}

/// Fails with [`Error::InadmissibleExponents`] unless `e` is admissible or
/// `force` is set. Returns whether the check was bypassed.
pub fn require_admissible(e: &ExponentSet, force: bool) -> Result<bool> {
    let report = check_admissible(e);
    if report.admissible {
        return Ok(false);
    }
    if force {
        return Ok(true);
    }
    Err(Error::InadmissibleExponents(format!("violated: {}", report.violation_summary())))
}
