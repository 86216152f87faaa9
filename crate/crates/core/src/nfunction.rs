//! The logarithmic N-function pair
//!
//! ```text
//! φ(t) = log(1 + |t|^q) |t|^{p-2} t,        Φ(t) = ∫_0^t φ(s) ds,
//! ```
//!
//! their inverses, the complementary (Young-conjugate) function, the
//! Orlicz-Sobolev conjugate and the index `p⁰ = sup t φ(t) / Φ(t)`.
//!
//! `Φ` is needed millions of times per solve, so [`NFunctionParams::capital_phi`]
//! evaluates it from convergent series after the substitution `w = s^q`:
//!
//! ```text
//! Φ(t) = (1/p) [ |t|^p log(1 + |t|^q) − R(|t|^q) ],   R(X) = ∫_0^X w^{p/q} / (1 + w) dw,
//! ```
//!
//! with a power series for `X ≤ 1/2`, a 16-point Gauss-Legendre panel on
//! `(1/2, 2]` and an expansion in `1/w` beyond. The adaptive-quadrature form
//! of the same split is kept as [`NFunctionParams::capital_phi_quadrature`]
//! and the two are cross-checked in the tests.

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_simpson, gauss_legendre_16};
use crate::roots::{decreasing_sign_change, solve_increasing};

/// Residual tolerance of the Newton stage in the inverse functions.
const INVERSE_FTOL: f64 = 1e-12;

/// Tolerance of the remainder quadrature, relative to the closed term.
const QUADRATURE_RTOL: f64 = 1e-12;

/// Above this `|t|` the quadrature route switches to the series remainder.
const HUGE_T: f64 = 1e12;

/// Upper end of the analytic head of the Orlicz-Sobolev integral.
const SOBOLEV_HEAD: f64 = 1e-6;

/// Bounds and density of the logarithmic grid used by [`NFunctionParams::p_zero_estimate`].
pub const P_ZERO_GRID: (f64, f64, usize) = (1e-8, 1e8, 2000);

const SERIES_MAX_TERMS: usize = 400;

/// Exponents `(p, q)` of the N-function, with the constants of the fast
/// evaluation path precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NFunctionParams {
    p: f64,
    q: f64,
    /// p / q
    c: f64,
    rem_half: f64,
    rem_two: f64,
    /// Index of the near-zero exponent `c − k` in the tail expansion.
    k_star: usize,
    /// `Σ_{k≠k*} (−1)^k 2^{c−k} / (c−k)`
    tail_at_two: f64,
}

impl NFunctionParams {
    /// Requires `p > 1` and `q ≥ 1`.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidParameter(format!("p must be finite and > 1, got {p}")));
        }
        if !(q.is_finite() && q >= 1.0) {
            return Err(Error::InvalidParameter(format!("q must be finite and >= 1, got {q}")));
        }
        let c = p / q;
        let k_star = c.round() as usize;
        let mut params = Self { p, q, c, rem_half: 0.0, rem_two: 0.0, k_star, tail_at_two: 0.0 };
        params.rem_half = params.remainder_small(0.5);
        params.rem_two = params.rem_half + params.remainder_panel(2.0);
        let mut acc = 0.0;
        let mut k = 0usize;
        loop {
            if k != k_star {
                let d = c - k as f64;
                let term = alternating(k) * 2f64.powf(d) / d;
                acc += term;
                if k as f64 > c + 1.0 && term.abs() <= 1e-18 * acc.abs() {
                    break;
                }
            }
            k += 1;
            if k > SERIES_MAX_TERMS {
                break;
            }
        }
        params.tail_at_two = acc;
        Ok(params)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `p + q`, the value of `p⁰` for this family.
    pub fn p_plus_q(&self) -> f64 {
        self.p + self.q
    }

    /// `φ(t) = log(1+|t|^q) |t|^{p−2} t`; exactly odd, and `φ(0) = 0`.
    pub fn phi(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let a = t.abs();
        let v = a.powf(self.q).ln_1p() * a.powf(self.p - 1.0);
        if t < 0.0 {
            -v
        } else {
            v
        }
    }

    /// `φ'(t)`, even in `t`; the limit at 0 is 0 because `p + q > 2`.
    pub fn phi_derivative(&self, t: f64) -> f64 {
        let a = t.abs();
        if a == 0.0 {
            return 0.0;
        }
        let aq = a.powf(self.q);
        let ap2 = a.powf(self.p - 2.0);
        self.q * aq / (1.0 + aq) * ap2 + (self.p - 1.0) * ap2 * aq.ln_1p()
    }

    /// `φ(t)/t = log(1+|t|^q)|t|^{p−2}`, extended by 0 at `t = 0`.
    pub fn phi_over_t(&self, t: f64) -> f64 {
        let a = t.abs();
        if a == 0.0 {
            return 0.0;
        }
        a.powf(self.q).ln_1p() * a.powf(self.p - 2.0)
    }

    /// `Φ(t)`, even, convex, `Φ(0) = 0`; series evaluation accurate to a few
    /// ulps over the whole range.
    pub fn capital_phi(&self, t: f64) -> f64 {
        let a = t.abs();
        if a == 0.0 {
            return 0.0;
        }
        let x = a.powf(self.q);
        if x <= 0.5 {
            // Φ(t) = Σ_{j≥1} (−1)^{j+1} t^{p+qj} / (j (p+qj))
            let mut power = a.powf(self.p) * x;
            let mut sum = 0.0;
            for j in 1..=SERIES_MAX_TERMS {
                let jf = j as f64;
                let term = alternating(j - 1) * power / (jf * (self.p + self.q * jf));
                sum += term;
                if term.abs() <= 1e-18 * sum.abs() {
                    break;
                }
                power *= x;
            }
            return sum;
        }
        (a.powf(self.p) * x.ln_1p() - self.remainder(x)) / self.p
    }

    /// `R(X) = ∫_0^X w^{p/q}/(1+w) dw`, so that the remainder of the closed
    /// split satisfies `∫_0^{|t|} s^{p+q−1}/(1+s^q) ds = R(|t|^q)/q`.
    fn remainder(&self, x: f64) -> f64 {
        if x <= 0.5 {
            self.remainder_small(x)
        } else if x <= 2.0 {
            self.rem_half + self.remainder_panel(x)
        } else {
            self.rem_two + self.remainder_tail(x)
        }
    }

    fn remainder_small(&self, x: f64) -> f64 {
        let mut power = x.powf(self.c + 1.0);
        let mut sum = 0.0;
        for k in 0..SERIES_MAX_TERMS {
            let term = alternating(k) * power / (self.c + k as f64 + 1.0);
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
            power *= x;
        }
        sum
    }

    fn remainder_panel(&self, x: f64) -> f64 {
        let c = self.c;
        gauss_legendre_16(|w: f64| w.powf(c) / (1.0 + w), 0.5, x)
    }

    /// `∫_2^X w^c/(1+w) dw = Σ_k (−1)^k (X^{c−k} − 2^{c−k}) / (c−k)`.
    fn remainder_tail(&self, x: f64) -> f64 {
        let inv = 1.0 / x;
        let mut power = x.powf(self.c);
        let mut acc = 0.0;
        for k in 0..SERIES_MAX_TERMS {
            if k != self.k_star {
                let d = self.c - k as f64;
                let term = alternating(k) * power / d;
                acc += term;
                if k as f64 > self.c + 1.0 && term.abs() <= 1e-18 * acc.abs() {
                    break;
                }
            }
            power *= inv;
        }
        let d = self.c - self.k_star as f64;
        let log_ratio = (0.5 * x).ln();
        let special = if d == 0.0 { log_ratio } else { 2f64.powf(d) * (d * log_ratio).exp_m1() / d };
        acc - self.tail_at_two + alternating(self.k_star) * special
    }

    /// `Φ(t)` through the closed split with the remainder integrated by
    /// adaptive Simpson (absolute tolerance 1e−12 relative to the closed
    /// term). Beyond `|t| = 1e12` the remainder comes from the series.
    pub fn capital_phi_quadrature(&self, t: f64) -> Result<f64> {
        let a = t.abs();
        if a == 0.0 {
            return Ok(0.0);
        }
        let closed = a.powf(self.p) * a.powf(self.q).ln_1p() / self.p;
        if a > HUGE_T {
            return Ok(closed - self.remainder(a.powf(self.q)) / self.p);
        }
        let (p, q) = (self.p, self.q);
        let integrand = |s: f64| s.powf(p + q - 1.0) / (1.0 + s.powf(q));
        let tol = (QUADRATURE_RTOL * closed * p / q).max(f64::MIN_POSITIVE);
        // Geometric panels keep the Simpson refinement local to each scale.
        let mut hi = a;
        let mut total = 0.0;
        while hi > a * 1e-6 && hi > 1e-3 {
            let lo = 0.5 * hi;
            total += adaptive_simpson(integrand, lo, hi, tol / 64.0)?;
            hi = lo;
        }
        total += adaptive_simpson(integrand, 0.0, hi, tol / 64.0)?;
        Ok(closed - q / p * total)
    }

    /// `φ⁻¹(s)`, exactly odd in `s`.
    pub fn phi_inverse(&self, s: f64) -> Result<f64> {
        if s == 0.0 {
            return Ok(0.0);
        }
        let t =
            solve_increasing(|t| self.phi(t), |t| self.phi_derivative(t), s.abs(), 1.0, INVERSE_FTOL, "phi_inverse")?;
        Ok(if s < 0.0 { -t } else { t })
    }

    /// The unique `t ≥ 0` with `Φ(t) = y`.
    pub fn capital_phi_inverse(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::InvalidParameter(format!("capital_phi_inverse needs y >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        solve_increasing(|t| self.capital_phi(t), |t| self.phi(t), y, 1.0, INVERSE_FTOL, "capital_phi_inverse")
    }

    /// Complementary N-function `Φ̄(s) = ∫_0^{|s|} φ⁻¹(σ) dσ`.
    ///
    /// Evaluated as `∫_0^{φ⁻¹(|s|)} τ φ'(τ) dτ` (substituting `σ = φ(τ)`),
    /// which needs a single inversion instead of one per quadrature node.
    /// For this `φ` the function coincides with `sup_t { ts − Φ(t) }`.
    pub fn young_conjugate(&self, s: f64) -> Result<f64> {
        let s = s.abs();
        if s == 0.0 {
            return Ok(0.0);
        }
        let upper = self.phi_inverse(s)?;
        let tol = 1e-14 * (s * upper).max(f64::MIN_POSITIVE);
        adaptive_simpson(|tau| tau * self.phi_derivative(tau), 0.0, upper, tol)
    }

    /// `Φ⋆⁻¹(t) = ∫_0^t Φ⁻¹(s) / s^{(N+1)/N} ds`, defined for `p + q < N`.
    pub fn sobolev_conjugate_inverse(&self, n: usize, t: f64) -> Result<f64> {
        self.check_sobolev(n)?;
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("sobolev_conjugate_inverse needs t >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let tau = self.capital_phi_inverse(t)?;
        self.sobolev_integral(n, tau)
    }

    /// `Φ⋆(y)`, obtained by inverting [`Self::sobolev_conjugate_inverse`].
    pub fn sobolev_conjugate(&self, n: usize, y: f64) -> Result<f64> {
        self.check_sobolev(n)?;
        if !(y >= 0.0) {
            return Err(Error::InvalidParameter(format!("sobolev_conjugate needs y >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        // Φ⋆⁻¹(Φ(e^x)) is increasing in x; bracket, then solve in log τ.
        let g = |x: f64| y - self.sobolev_integral(n, x.exp()).unwrap_or(f64::NAN);
        let mut lo = -1.0;
        let mut hi = 1.0;
        while g(lo) <= 0.0 {
            lo -= 64.0;
            if lo < -745.0 {
                return Ok(0.0);
            }
        }
        while g(hi) >= 0.0 {
            hi += 64.0;
            if hi > 700.0 {
                return Err(Error::NonConvergence { what: "sobolev_conjugate", iterations: 0 });
            }
        }
        let x = decreasing_sign_change(g, lo, hi, 1e-14, 0.0, "sobolev_conjugate")?;
        Ok(self.capital_phi(x.exp()))
    }

    fn check_sobolev(&self, n: usize) -> Result<()> {
        if self.p + self.q >= n as f64 {
            return Err(Error::InadmissibleExponents(format!(
                "the Orlicz-Sobolev conjugate needs p+q < N (p+q={}, N={n})",
                self.p + self.q
            )));
        }
        Ok(())
    }

    /// `∫_0^τ σ φ(σ) / Φ(σ)^{(N+1)/N} dσ`, i.e. `Φ⋆⁻¹(Φ(τ))`.
    ///
    /// On `(0, 1e−6]` the integrand is replaced by its two-term expansion
    /// `(p+q)^κ σ^{−(p+q)/N} (1 + c₁ σ^q)`; above, adaptive Simpson runs in
    /// `log σ` where the integrand is smooth.
    fn sobolev_integral(&self, n: usize, tau: f64) -> Result<f64> {
        let pq = self.p + self.q;
        let nf = n as f64;
        let kappa = (nf + 1.0) / nf;
        let beta = 1.0 - pq / nf;
        let c1 = kappa * pq / (2.0 * (self.p + 2.0 * self.q)) - 0.5;
        let prefactor = pq.powf(kappa);
        let head = |s: f64| prefactor * (s.powf(beta) / beta + c1 * s.powf(beta + self.q) / (beta + self.q));
        if tau <= SOBOLEV_HEAD {
            return Ok(head(tau));
        }
        let head_value = head(SOBOLEV_HEAD);
        let integrand = |x: f64| {
            let s = x.exp();
            s * s * self.phi(s) / self.capital_phi(s).powf(kappa)
        };
        let body = adaptive_simpson(integrand, SOBOLEV_HEAD.ln(), tau.ln(), 1e-13 * head_value)?;
        Ok(head_value + body)
    }

    /// `t φ(t) / Φ(t)`, with the limit `p + q` at `t = 0`.
    pub fn index_ratio(&self, t: f64) -> f64 {
        if t == 0.0 {
            return self.p + self.q;
        }
        t * self.phi(t) / self.capital_phi(t)
    }

    /// Supremum of `t φ(t)/Φ(t)` over the fixed logarithmic grid
    /// [`P_ZERO_GRID`], together with the ratio at the grid's upper end.
    pub fn p_zero_estimate(&self) -> PZeroEstimate {
        let (lo, hi, n) = P_ZERO_GRID;
        let (llo, lhi) = (lo.log10(), hi.log10());
        let mut sup = f64::NEG_INFINITY;
        let mut last = f64::NAN;
        for i in 0..n {
            let t = 10f64.powf(llo + (lhi - llo) * i as f64 / (n - 1) as f64);
            let ratio = self.index_ratio(t);
            sup = sup.max(ratio);
            last = ratio;
        }
        PZeroEstimate { estimate: sup, ratio_at_upper: last, upper: hi }
    }
}

/// Result of [`NFunctionParams::p_zero_estimate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PZeroEstimate {
    /// Grid supremum of `t φ(t)/Φ(t)`.
    pub estimate: f64,
    /// The ratio at the largest grid point.
    pub ratio_at_upper: f64,
    pub upper: f64,
}

#[inline]
fn alternating(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(p: f64, q: f64) -> NFunctionParams {
        NFunctionParams::new(p, q).unwrap()
    }

    /// Φ for (p, q) = (2, 1): ((t²−1)/2) log(1+t) − t²/4 + t/2.
    fn capital_phi_2_1(t: f64) -> f64 {
        let t = t.abs();
        0.5 * (t * t - 1.0) * t.ln_1p() - 0.25 * t * t + 0.5 * t
    }

    // Reference values of Φ from 40-digit quadrature.
    #[allow(clippy::type_complexity)]
    const REFERENCE: &[((f64, f64), &[(f64, f64)])] = &[
        (
            (1.9, 1.05),
            &[
                (1e-3, 4.78701333021362207e-10),
                (0.3, 0.00883671473758417458),
                (0.7, 0.0960596816216483616),
                (1.0, 0.255349013697333918),
                (1.3, 0.51767710985266136),
                (2.0, 1.61127927576552718),
                (5.0, 16.2037860511931396),
                (50.0, 3194.128519964969),
                (1e4, 191057219.90229187),
                (1e8, 15672994775715858.4),
            ],
        ),
        (
            (2.5, 1.2),
            &[
                (1e-3, 2.14662949600994733e-12),
                (0.3, 0.00289270725467304835),
                (0.7, 0.0588900152388569657),
                (1.0, 0.202343981629310473),
                (1.3, 0.493465277412611566),
                (2.0, 2.0631615301031775),
                (5.0, 37.6189959956369108),
                (50.0, 29922.3313715661502),
                (1e4, 42289755692.6424642),
                (1e8, 8.64992675729035746e+20),
            ],
        ),
        (
            (1.5, 1.4),
            &[
                (1e-3, 6.88006849717226098e-10),
                (0.3, 0.00990032251317220341),
                (0.7, 0.103139013836575452),
                (1.0, 0.265661038067317457),
                (1.3, 0.521930298652843073),
                (2.0, 1.51562856860785397),
                (5.0, 12.2178077290910331),
                (50.0, 1076.29078063600568),
                (1e4, 7974111.16502946911),
                (1e8, 16570413138853.6692),
            ],
        ),
        (
            (3.0, 1.5),
            &[
                (1e-3, 7.02720035733516081e-15),
                (0.3, 0.000929982758828290782),
                (0.7, 0.0370945687475424391),
                (1.0, 0.166666666666666667),
                (1.3, 0.490662820378239172),
                (2.0, 2.74186848330695729),
                (5.0, 86.2194708763257018),
                (50.0, 223901.683460278232),
                (1e4, 4438504185983.31953),
                (1e8, 9.04367370531018274e+24),
            ],
        ),
        (
            (2.1, 2.1),
            &[
                (1e-3, 5.98068098063781271e-14),
                (0.3, 0.00147708097418384259),
                (0.7, 0.0463948127464285046),
                (1.0, 0.183949695771376485),
                (1.3, 0.484140649214691906),
                (2.0, 2.15111342934152298),
                (5.0, 35.3719935335773186),
                (50.0, 12706.2972548453861),
                (1e4, 2193919271.08602379),
                (1e8, 1.13222079273977138e+18),
            ],
        ),
        (
            (1.2, 3.0),
            &[
                (1e-3, 5.98068197804034897e-14),
                (0.3, 0.00150407501488337406),
                (0.7, 0.0486249874149187827),
                (1.0, 0.189712793339226792),
                (1.3, 0.475769700435499481),
                (2.0, 1.79158175543897172),
                (5.0, 16.1072881998112877),
                (50.0, 844.282866955358255),
                (1e4, 1321386.28167012591),
                (1e8, 175041227882.325703),
            ],
        ),
    ];

    #[test]
    fn rejects_bad_exponents() {
        assert!(NFunctionParams::new(1.0, 2.0).is_err());
        assert!(NFunctionParams::new(2.0, 0.5).is_err());
        assert!(NFunctionParams::new(f64::NAN, 2.0).is_err());
        assert!(NFunctionParams::new(2.0, 1.0).is_ok());
    }

    #[test]
    fn phi_examples() {
        assert_relative_eq!(params(2.0, 1.0).phi(1.0), 2f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(params(3.0, 2.0).phi(2.0), 4.0 * 5f64.ln(), epsilon = 1e-14);
        assert_eq!(params(1.9, 1.05).phi(0.0), 0.0);
    }

    #[test]
    fn capital_phi_matches_reference_table() {
        for &((p, q), rows) in REFERENCE {
            let f = params(p, q);
            for &(t, expected) in rows {
                assert_relative_eq!(f.capital_phi(t), expected, max_relative = 2e-14);
                assert_relative_eq!(f.capital_phi(-t), expected, max_relative = 2e-14);
            }
        }
    }

    #[test]
    fn capital_phi_quadrature_matches_reference_table() {
        for &((p, q), rows) in REFERENCE {
            let f = params(p, q);
            for &(t, expected) in rows {
                assert_relative_eq!(f.capital_phi_quadrature(t).unwrap(), expected, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn capital_phi_closed_form_p2_q1() {
        let f = params(2.0, 1.0);
        for &t in &[1e-4, 0.01, 0.2, 0.6, 1.0, 1.9, 2.2, 3.2, 17.0, 1e3, 1e7] {
            assert_relative_eq!(f.capital_phi(t), capital_phi_2_1(t), max_relative = 1e-12);
        }
    }

    #[test]
    fn capital_phi_huge_argument_uses_series_remainder() {
        let f = params(1.9, 1.05);
        let t = 1e13;
        assert_relative_eq!(f.capital_phi_quadrature(t).unwrap(), f.capital_phi(t), max_relative = 1e-14);
    }

    #[test]
    fn phi_inverse_round_trip_and_oddness() {
        let f = params(2.0, 1.0);
        assert_eq!(f.phi_inverse(0.0).unwrap(), 0.0);
        assert!((f.phi_inverse(f.phi(2.5)).unwrap() - 2.5).abs() < 1e-10);
        for &s in &[1e-6, 0.3, 4.0, 1e5] {
            assert_eq!(f.phi_inverse(-s).unwrap(), -f.phi_inverse(s).unwrap());
        }
    }

    #[test]
    fn capital_phi_inverse_round_trip() {
        let f = params(2.0, 1.0);
        assert_eq!(f.capital_phi_inverse(0.0).unwrap(), 0.0);
        assert!((f.capital_phi_inverse(f.capital_phi(3.2)).unwrap() - 3.2).abs() < 1e-9);
        let g = params(1.9, 1.05);
        for &t in &[1e-40, 1e-5, 0.8, 12.0, 1e6] {
            assert_relative_eq!(g.capital_phi_inverse(g.capital_phi(t)).unwrap(), t, max_relative = 1e-10);
        }
        assert!(g.capital_phi_inverse(-1.0).is_err());
    }

    #[test]
    fn small_t_asymptotics() {
        let f = params(1.9, 1.05);
        let t: f64 = 1e-4;
        let ratio = f.capital_phi_quadrature(t).unwrap() / t.powf(f.p_plus_q());
        assert!((ratio * f.p_plus_q() - 1.0).abs() < 0.01);
    }

    #[test]
    fn large_t_ratio_matches_reference() {
        // Φ(t)/(t^p log(1+t^q)) → 1/p only like 1 − 1/(p log t); the frozen
        // value at t = 1e6 is p·ratio = 0.9619040368 (40-digit quadrature).
        let f = params(1.9, 1.05);
        let t: f64 = 1e6;
        let ratio = f.capital_phi_quadrature(t).unwrap() / (t.powf(1.9) * t.powf(1.05).ln_1p());
        assert_relative_eq!(ratio * 1.9, 0.9619040368, max_relative = 1e-9);
    }

    #[test]
    fn young_conjugate_equality_case() {
        let f = params(2.0, 1.0);
        assert_eq!(f.young_conjugate(0.0).unwrap(), 0.0);
        let t = 1.7;
        let s = f.phi(t);
        let gap = f.capital_phi(t) + f.young_conjugate(s).unwrap() - t * s;
        assert!(gap.abs() < 1e-8, "gap {gap}");
    }

    #[test]
    fn young_conjugate_is_legendre_transform() {
        // Independent route: sup over a fine t-grid, refined by golden section.
        let f = params(1.9, 1.05);
        for &s in &[0.1, 1.0, 7.5] {
            let objective = |t: f64| t * s - f.capital_phi(t);
            let (mut a, mut b) = (0.0_f64, 50.0_f64);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..200 {
                let c = b - g * (b - a);
                let d = a + g * (b - a);
                if objective(c) > objective(d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            let sup = objective(0.5 * (a + b));
            assert_relative_eq!(f.young_conjugate(s).unwrap(), sup, max_relative = 1e-10);
        }
    }

    #[test]
    fn young_inequality_sampled() {
        use rand::{Rng, SeedableRng};
        let f = params(2.0, 1.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let t: f64 = rng.gen_range(1e-9..=10.0);
            let s: f64 = rng.gen_range(1e-9..=10.0);
            assert!(t * s <= f.capital_phi(t) + f.young_conjugate(s).unwrap() + 1e-10);
        }
    }

    // Φ⋆⁻¹ for (p, q, N) = (1.9, 1.05, 3), from 30-digit quadrature.
    const SOBOLEV_REFERENCE: &[(f64, f64)] = &[
        (1.0, 256.0771762447241),
        (10.0, 260.1661238860946),
        (100.0, 264.9839641522358),
        (1e3, 270.9875966195037),
        (1e4, 278.8339347440538),
        (1e5, 289.4648993524345),
        (1e6, 304.2479916449566),
    ];
    #[test]
    fn sobolev_conjugate_inverse_values() {
        let f = params(1.9, 1.05);
        assert_eq!(f.sobolev_conjugate_inverse(3, 0.0).unwrap(), 0.0);
        for &(t, expected) in SOBOLEV_REFERENCE {
            assert_relative_eq!(f.sobolev_conjugate_inverse(3, t).unwrap(), expected, max_relative = 1e-9);
        }
    }

    #[test]
    fn sobolev_conjugate_inverse_grows_without_levelling_off() {
        let f = params(1.9, 1.05);
        let values: Vec<f64> = (1..=6).map(|k| f.sobolev_conjugate_inverse(3, 10f64.powi(k)).unwrap()).collect();
        let increments: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(increments.iter().all(|&d| d > 0.0));
        // Divergent growth: each decade adds more than the last.
        assert!(increments.windows(2).all(|w| w[1] > w[0]), "{increments:?}");
    }

    #[test]
    fn sobolev_conjugate_requires_subcritical_sum() {
        let f = params(2.0, 1.2);
        assert!(matches!(f.sobolev_conjugate_inverse(3, 1.0), Err(Error::InadmissibleExponents(_))));
        assert!(matches!(f.sobolev_conjugate(3, 1.0), Err(Error::InadmissibleExponents(_))));
    }

    #[test]
    fn sobolev_conjugate_inverts() {
        let f = params(1.9, 1.05);
        for &y in &[5.0, 150.0, 200.0, 1e3] {
            let star = f.sobolev_conjugate(3, y).unwrap();
            assert!(star > 0.0);
            assert_relative_eq!(f.sobolev_conjugate_inverse(3, star).unwrap(), y, max_relative = 1e-9);
        }
    }

    #[test]
    fn p_zero_examples() {
        let est = params(1.9, 1.05).p_zero_estimate();
        assert!((est.estimate - 2.95).abs() < 1e-3);
        let est = params(2.0, 1.0).p_zero_estimate();
        assert!((est.estimate - 3.0).abs() < 1e-3);
        // The limit p at infinity is approached like p/(1 − 1/(p log t)):
        // reference ratio at 1e8 is 2.05580145047.
        assert_relative_eq!(est.ratio_at_upper, 2.05580145047, max_relative = 1e-9);
    }

    proptest! {
        #[test]
        fn phi_is_odd(t in -1e6f64..1e6) {
            let f = params(1.9, 1.05);
            prop_assert_eq!(f.phi(-t), -f.phi(t));
        }

        #[test]
        fn phi_is_increasing(a in -1e3f64..1e3, gap in 1e-6f64..10.0) {
            let f = params(1.9, 1.05);
            prop_assert!(f.phi(a + gap) > f.phi(a));
        }

        #[test]
        fn capital_phi_midpoint_convex(a in 0f64..100.0, b in 0f64..100.0) {
            let f = params(1.9, 1.05);
            let mid = f.capital_phi(0.5 * (a + b));
            prop_assert!(mid <= 0.5 * (f.capital_phi(a) + f.capital_phi(b)) + 1e-12);
        }

        #[test]
        fn capital_phi_inverse_monotone(y1 in 0f64..1e4, y2 in 0f64..1e4) {
            prop_assume!(y1 < y2);
            let f = params(2.0, 1.0);
            prop_assert!(f.capital_phi_inverse(y1).unwrap() < f.capital_phi_inverse(y2).unwrap());
        }

        #[test]
        fn index_ratio_between_p_and_p_plus_q(e in -8f64..8.0) {
            let f = params(2.5, 1.2);
            let r = f.index_ratio(10f64.powf(e));
            prop_assert!(r >= 2.5 - 1e-6 && r <= 3.7 + 1e-6);
        }
    }
}
