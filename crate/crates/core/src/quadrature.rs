//! Adaptive Simpson integration and a fixed Gauss-Legendre rule.

use crate::error::{Error, Result};

/// Maximum bisection depth of [`adaptive_simpson`].
pub const MAX_DEPTH: u32 = 60;

/// Hard cap on integrand evaluations for a single call.
const MAX_EVALUATIONS: usize = 4_000_000;

/// Integrates `f` over `[a, b]` by adaptive Simpson with Richardson
/// correction, to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    if !(a.is_finite() && b.is_finite()) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs a finite interval and positive tolerance (a={a}, b={b}, tol={tol})"
        )));
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut state = State { evaluations: 3, stalled: false };
    let value = recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH, &mut state);
    if state.stalled || !value.is_finite() {
        return Err(Error::QuadratureFailure { a, b, evaluations: state.evaluations });
    }
    Ok(value)
}

struct State {
    evaluations: usize,
    stalled: bool,
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    state: &mut State,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    state.evaluations += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // Accept once the Richardson error estimate is below tolerance or has
    // reached the rounding floor of the local sum.
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if delta.abs() <= 15.0 * tol || delta.abs() <= floor {
        return left + right + delta / 15.0;
    }
    if depth == 0 || state.evaluations > MAX_EVALUATIONS || m <= a || m >= b {
        state.stalled = true;
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, state)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, state)
}

/// 16-point Gauss-Legendre abscissae on [-1, 1] (positive half).
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_45,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_37,
    0.617_876_244_402_643_8,
    0.755_404_408_355_003,
    0.865_631_202_387_831_8,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];

const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_59,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_62,
    0.149_595_988_816_576_76,
    0.124_628_971_255_534_03,
    0.095_158_511_682_492_59,
    0.062_253_523_938_647_706,
    0.027_152_459_411_754_037,
];

/// Fixed 16-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre_16<F>(f: F, a: f64, b: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in GL16_X.iter().zip(GL16_W.iter()) {
        sum += w * (f(c - h * x) + f(c + h * x));
    }
    h * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simpson_polynomial_and_smooth() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(v, 4.0, epsilon = 1e-13);
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-11);
    }

    #[test]
    fn simpson_weak_endpoint_singularity() {
        // ∫_0^1 x^{1.95} dx = 1/2.95
        let v = adaptive_simpson(|x: f64| x.powf(1.95), 0.0, 1.0, 1e-13).unwrap();
        assert_relative_eq!(v, 1.0 / 2.95, epsilon = 1e-11);
    }

    #[test]
    fn simpson_reversed_and_empty() {
        assert_eq!(adaptive_simpson(|x| x, 1.0, 1.0, 1e-12).unwrap(), 0.0);
        let v = adaptive_simpson(|x| x, 1.0, 0.0, 1e-12).unwrap();
        assert_relative_eq!(v, -0.5, epsilon = 1e-14);
    }

    #[test]
    fn simpson_reports_stall() {
        let r = adaptive_simpson(|x: f64| (1.0 / x).sin(), 1e-9, 1.0, 1e-15);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }

    #[test]
    fn gauss_legendre_exact_for_degree_31() {
        let v = gauss_legendre_16(|x: f64| x.powi(30) + x.powi(31), -1.0, 1.0);
        assert_relative_eq!(v, 2.0 / 31.0, epsilon = 1e-14);
        let v = gauss_legendre_16(f64::exp, 0.5, 2.0);
        assert_relative_eq!(v, 2f64.exp() - 0.5f64.exp(), epsilon = 1e-14);
    }
}
