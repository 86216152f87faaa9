//! Scalar root finding for monotone increasing functions on `[0, ∞)`.

use crate::error::{Error, Result};

/// Iteration budget shared by bisection and Newton refinement.
pub const MAX_ITERATIONS: usize = 200;

/// Relative bracket width at which bisection hands over to Newton.
const BISECTION_WIDTH: f64 = 1e-6;

/// Solves `f(t) = target` for `t ≥ 0` where `f` is continuous, strictly
/// increasing and `f(0) = 0 < target`.
///
/// A bracket `[hi/2, hi]` is located by doubling (or shrinking) from
/// `initial_hi`, narrowed by bisection to relative width 1e-6, and then
/// refined by Newton steps (falling back to bisection whenever a step leaves
/// the bracket) until `|f(t) − target| ≤ ftol · target`. Bisection and Newton
/// share a budget of [`MAX_ITERATIONS`].
pub fn solve_increasing<F, D>(f: F, df: D, target: f64, initial_hi: f64, ftol: f64, what: &'static str) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(target.is_finite() && target > 0.0) {
        return Err(Error::InvalidParameter(format!("{what}: target must be positive and finite, got {target}")));
    }
    let scale = ftol * target;
    let mut hi = initial_hi;
    if f(hi) < target {
        while f(hi) < target {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::NonConvergence { what, iterations: 0 });
            }
        }
    } else {
        while f(0.5 * hi) >= target {
            hi *= 0.5;
            if hi < f64::MIN_POSITIVE {
                return Ok(0.0);
            }
        }
    }
    let mut lo = 0.5 * hi;
    let mut iterations = 0;
    while hi - lo > BISECTION_WIDTH * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let mut t = 0.5 * (lo + hi);
    loop {
        let residual = f(t) - target;
        if residual.abs() <= scale {
            return Ok(t);
        }
        if residual < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            // Bracket collapsed to adjacent floats; `t` is as good as f64 allows.
            return Ok(t);
        }
        let slope = df(t);
        let newton = t - residual / slope;
        t = if slope > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NonConvergence { what, iterations });
        }
    }
}

/// Finds the sign change of a strictly decreasing function `g` on
/// `[lo, hi]` with `g(lo) > 0 > g(hi)` by the Illinois variant of regula
/// falsi, stopping at relative bracket width `rel_width` or when
/// `|g| ≤ gtol`.
pub fn decreasing_sign_change<G>(
    g: G,
    mut lo: f64,
    mut hi: f64,
    rel_width: f64,
    gtol: f64,
    what: &'static str,
) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let mut glo = g(lo);
    let mut ghi = g(hi);
    if !(glo > 0.0 && ghi < 0.0) {
        if glo == 0.0 {
            return Ok(lo);
        }
        if ghi == 0.0 {
            return Ok(hi);
        }
        return Err(Error::InvalidParameter(format!("{what}: no sign change on [{lo}, {hi}] (values {glo}, {ghi})")));
    }
    let mut side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        let mut t = (lo * ghi - hi * glo) / (ghi - glo);
        if !(t > lo && t < hi) {
            t = 0.5 * (lo + hi);
        }
        let gt = g(t);
        if gt.abs() <= gtol || hi - lo <= rel_width * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE) {
            return Ok(t);
        }
        if gt > 0.0 {
            lo = t;
            glo = gt;
            if side == 1 {
                ghi *= 0.5;
            }
            side = 1;
        } else {
            hi = t;
            ghi = gt;
            if side == -1 {
                glo *= 0.5;
            }
            side = -1;
        }
    }
    Err(Error::NonConvergence { what, iterations: MAX_ITERATIONS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cube_root() {
        let t = solve_increasing(|t| t * t * t, |t| 3.0 * t * t, 27.0, 1.0, 1e-14, "cube").unwrap();
        assert_relative_eq!(t, 3.0, epsilon = 1e-13);
    }

    #[test]
    fn tiny_target_keeps_relative_accuracy() {
        let t = solve_increasing(|t| t * t, |t| 2.0 * t, 1e-200, 1.0, 1e-12, "sq").unwrap();
        assert_relative_eq!(t, 1e-100, max_relative = 1e-11);
        assert!(solve_increasing(|t| t, |_| 1.0, 0.0, 1.0, 1e-12, "id").is_err());
    }

    #[test]
    fn unbounded_budget_exhausts() {
        let r = solve_increasing(|t: f64| t.atan(), |t| 1.0 / (1.0 + t * t), 2.0, 1.0, 1e-12, "atan");
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn illinois_finds_sign_change() {
        let t = decreasing_sign_change(|t| 2.0 - t * t, 0.0, 3.0, 1e-15, 0.0, "sqrt2").unwrap();
        assert_relative_eq!(t, std::f64::consts::SQRT_2, epsilon = 1e-14);
        assert!(decreasing_sign_change(|t| 1.0 + t, 0.0, 1.0, 1e-12, 0.0, "none").is_err());
    }
}
