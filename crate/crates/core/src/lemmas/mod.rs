//! Signed-margin checkers for the elementary inequalities: logarithm bounds,
//! the power inequalities in an exponent parameter, and the rectangle and
//! product bounds that close the `|h_N(s)| < 2^{2σ − 1}` argument.
//!
//! Every checker returns a [`MarginResult`] whose `lhs` is the side that
//! should be smaller, so `margin = rhs − lhs ≥ 0` always means "holds".
//! Out-of-domain inputs come back with `domain_ok = false` and NaN fields.
//!
//! The lemma exponent is called `exponent_t` throughout; it is unrelated to
//! `t = Im s`, which keeps the name `t`.

mod suite;

pub use suite::{
    run_suite, AnchorResult, EqualityTally, Inequality, InequalityReport, SuiteConfig, SuiteReport,
    NEAR_EQUALITY_BAND,
};

use serde::Serialize;

/// Smallest admissible `x` in the rectangle inequality, `(1 + √3)/4`.
pub const RECT_X_MIN: f64 = 0.683_012_701_892_219_3;

/// `¼ ∏_{n=1}^{3} ((2n + 1)/(2n))² = (105/96)²`.
const PRODUCT_BASE: f64 = (105.0 / 96.0) * (105.0 / 96.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginResult {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub strict_expected: bool,
    pub domain_ok: bool,
}

impl MarginResult {
    fn new(lhs: f64, rhs: f64, strict_expected: bool) -> Self {
        MarginResult {
            lhs,
            rhs,
            margin: rhs - lhs,
            strict_expected,
            domain_ok: true,
        }
    }

    fn out_of_domain() -> Self {
        MarginResult {
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            strict_expected: false,
            domain_ok: false,
        }
    }

    /// `max(1, |lhs|, |rhs|)`, the scale rounding errors are measured against.
    pub fn scale(&self) -> f64 {
        self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBound {
    /// `1/(x + 1) < log(1 + 1/x)`, `x < −1` or `x > 0`.
    Eq3Lo,
    /// `log(1 + 1/x) < 1/x`, `x < −1` or `x > 0`.
    Eq3Hi,
    /// `1/(x + 1/2) < log(1 + 1/x)`, `x > 0`.
    Eq4Lo,
    /// `log(1 + 1/x) < 1/x`, `x > 0`.
    Eq4Hi,
    /// `2x/(2 + x) < log(1 + x)`, `x > 0`.
    Eq5Lo,
    /// `log(1 + x) < x(2 + x)/(2(1 + x))`, `x > 0`.
    Eq5Hi,
    /// `x(2 + x)/(2(1 + x)) < log(1 + x)`, `−1 < x < 0`.
    Eq6Lo,
    /// `log(1 + x) < 2x/(2 + x)`, `−1 < x < 0`.
    Eq6Hi,
}

pub fn log_bound(variant: LogBound, x: f64) -> MarginResult {
    use LogBound::*;
    let outer = x < -1.0 || x > 0.0;
    let positive = x > 0.0;
    let unit = x > -1.0 && x < 0.0;
    let domain_ok = x.is_finite()
        && match variant {
            Eq3Lo | Eq3Hi => outer,
            Eq4Lo | Eq4Hi | Eq5Lo | Eq5Hi => positive,
            Eq6Lo | Eq6Hi => unit,
        };
    if !domain_ok {
        return MarginResult::out_of_domain();
    }
    let log_recip = (1.0 / x).ln_1p();
    let log_plain = x.ln_1p();
    let pade = 2.0 * x / (2.0 + x);
    let rational = x * (2.0 + x) / (2.0 * (1.0 + x));
    let (lhs, rhs) = match variant {
        Eq3Lo => (1.0 / (x + 1.0), log_recip),
        Eq3Hi => (log_recip, 1.0 / x),
        Eq4Lo => (1.0 / (x + 0.5), log_recip),
        Eq4Hi => (log_recip, 1.0 / x),
        Eq5Lo => (pade, log_plain),
        Eq5Hi => (log_plain, rational),
        Eq6Lo => (rational, log_plain),
        Eq6Hi => (log_plain, pade),
    };
    MarginResult::new(lhs, rhs, true)
}

/// `(1 + 1/(t x + t − 1))^t ≤ 1 + 1/x` for `t ≥ 1`, `x ≤ −1` or `x > 0`;
/// equality only at `t = 1`.
pub fn power_ineq_7(exponent_t: f64, x: f64) -> MarginResult {
    let t = exponent_t;
    if !(t >= 1.0 && t.is_finite() && x.is_finite() && (x <= -1.0 || x > 0.0)) {
        return MarginResult::out_of_domain();
    }
    let base = 1.0 + 1.0 / (t * x + (t - 1.0));
    if !(base > 0.0) {
        return MarginResult::out_of_domain();
    }
    MarginResult::new(base.powf(t), 1.0 + 1.0 / x, t != 1.0)
}

/// `(1 + x/t)^t ≤ 1 + 2tx/((1 − t)x + 2t)` for `t ≥ 1`, `0 ≤ x ≤ 2`;
/// equality only at `x = 0` or `t = 1`.
pub fn power_ineq_8(exponent_t: f64, x: f64) -> MarginResult {
    let t = exponent_t;
    if !(t >= 1.0 && t.is_finite() && (0.0..=2.0).contains(&x)) {
        return MarginResult::out_of_domain();
    }
    let lhs = (1.0 + x / t).powf(t);
    let rhs = 1.0 + 2.0 * t * x / ((1.0 - t) * x + 2.0 * t);
    MarginResult::new(lhs, rhs, x != 0.0 && t != 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerBound {
    /// `(1 + 1/x)^a ≥ 1 + a/(x + 1 − a)`, `x ≤ −1` or `x > 0`.
    Eq9,
    /// `(1 + 1/x)^a ≥ 1 + a/(x + (1 − a)/2)`, `x > 0`.
    Eq10,
    /// `(1 + 1/x)^a ≤ 1 + a/(x + (1 − a)/2)`, `x ≤ −1`.
    Eq11,
}

/// The `0 ≤ a ≤ 1` power bounds on `(1 + 1/x)^a`; equality only at
/// `a ∈ {0, 1}` (and `x = −1` for `Eq9`, which has a zero base and is
/// reported out of domain).
pub fn power_ineq_a(variant: PowerBound, a: f64, x: f64) -> MarginResult {
    let x_ok = match variant {
        PowerBound::Eq9 => x <= -1.0 || x > 0.0,
        PowerBound::Eq10 => x > 0.0,
        PowerBound::Eq11 => x <= -1.0,
    };
    if !((0.0..=1.0).contains(&a) && x.is_finite() && x_ok) {
        return MarginResult::out_of_domain();
    }
    let base = 1.0 + 1.0 / x;
    if !(base > 0.0) {
        return MarginResult::out_of_domain();
    }
    let power = base.powf(a);
    let strict = a != 0.0 && a != 1.0;
    match variant {
        PowerBound::Eq9 => MarginResult::new(1.0 + a / (x + (1.0 - a)), power, strict),
        PowerBound::Eq10 => MarginResult::new(1.0 + a / (x + 0.5 * (1.0 - a)), power, strict),
        PowerBound::Eq11 => MarginResult::new(power, 1.0 + a / (x + 0.5 * (1.0 - a)), strict),
    }
}

fn strip_sigma_ok(sigma: f64) -> bool {
    sigma > 0.0 && sigma < 0.5
}

/// `((2x + 1 − σ)² + t²)/((2x + σ)² + t²) <
///  {((2x + 1)/(2x))² (1 − (1 + 4x)q/((1 + 2x)²(q + 4x²)))}^{1 − 2σ}`
/// with `q = (σ − 1)σ + t²`, for `0 < σ < 1/2`, `x ≥ (1 + √3)/4`.
///
/// Evaluated in the equivalent forms `1 + (1 − 2σ)(4x + 1)/((2x + σ)² + t²)`
/// and `(1 + (4x + 1)/(q + 4x²))^{1 − 2σ}`, which avoid cancellation near
/// `σ = 1/2`.
pub fn lemma2_rect(x: f64, sigma: f64, t: f64) -> MarginResult {
    if !(strip_sigma_ok(sigma) && x >= RECT_X_MIN && x.is_finite() && t.is_finite()) {
        return MarginResult::out_of_domain();
    }
    let a = 1.0 - 2.0 * sigma;
    let lhs = 1.0 + a * (4.0 * x + 1.0) / ((2.0 * x + sigma).powi(2) + t * t);
    let q = (sigma - 1.0) * sigma + t * t;
    let rhs = (a * ((4.0 * x + 1.0) / (q + 4.0 * x * x)).ln_1p()).exp();
    MarginResult::new(lhs, rhs, true)
}

/// The rectangle inequality after the substitution `1 − 2σ = 1/y`:
/// `(1 + X/y)^y < 1 + 4(1 + 4x)y²/(1 + (−1 + 4t² + 16x²)y²)` with `X` from
/// [`eq15_factor`]; `y ≥ 1`.
pub fn lemma2_rect_substituted(x: f64, y: f64, t: f64) -> MarginResult {
    if !(y > 1.0 && y.is_finite() && x >= RECT_X_MIN && x.is_finite() && t.is_finite()) {
        return MarginResult::out_of_domain();
    }
    let factor = eq15_factor(x, y, t);
    let lhs = (y * (factor / y).ln_1p()).exp();
    let y2 = y * y;
    let rhs = 1.0 + 4.0 * (1.0 + 4.0 * x) * y2 / (1.0 + (-1.0 + 4.0 * t * t + 16.0 * x * x) * y2);
    MarginResult::new(lhs, rhs, true)
}

/// `X = 4(1 + 4x)/((−1/y + 1 + 4x)² + 4t²)`.
pub fn eq15_factor(x: f64, y: f64, t: f64) -> f64 {
    4.0 * (1.0 + 4.0 * x) / ((-1.0 / y + 1.0 + 4.0 * x).powi(2) + 4.0 * t * t)
}

/// `0 < X ≤ 2` on `x ≥ (1 + √3)/4`, `y ≥ 1`, the range where the exponent
/// inequality [`power_ineq_8`] applies with `x := X`, `t := y`. Equality at
/// the corner `x = (1 + √3)/4`, `y = 1`, `t = 0`.
pub fn eq15_bound(x: f64, y: f64, t: f64) -> MarginResult {
    if !(y >= 1.0 && y.is_finite() && x >= RECT_X_MIN && x.is_finite() && t.is_finite()) {
        return MarginResult::out_of_domain();
    }
    let factor = eq15_factor(x, y, t);
    if !(factor > 0.0) {
        return MarginResult::out_of_domain();
    }
    let corner = x == RECT_X_MIN && y == 1.0 && t == 0.0;
    MarginResult::new(factor, 2.0, !corner)
}

/// `((1 − σ)² + t²)/(σ² + t²) < (1 + 1/((σ − 1)σ + t²))^{1 − 2σ}` for
/// `0 < σ < 1/2`, `t ≥ 1/2`.
pub fn lemma2_h1(sigma: f64, t: f64) -> MarginResult {
    if !(strip_sigma_ok(sigma) && t >= 0.5 && t.is_finite()) {
        return MarginResult::out_of_domain();
    }
    let a = 1.0 - 2.0 * sigma;
    let lhs = 1.0 + a / (sigma * sigma + t * t);
    let q = (sigma - 1.0) * sigma + t * t;
    let rhs = (a * (1.0 / q).ln_1p()).exp();
    MarginResult::new(lhs, rhs, true)
}

/// `|h₁|² ∏_{n ≤ 3} ((2n + 1 − σ)² + t²)/((2n + σ)² + t²) <
///  (¼ ∏_{n ≤ 3} ((2n + 1)/(2n))²)^{1 − 2σ}` for `0 < σ < 1/2`, `t ≥ 12`.
pub fn lemma2_product(sigma: f64, t: f64) -> MarginResult {
    if !(strip_sigma_ok(sigma) && t >= 12.0 && t.is_finite()) {
        return MarginResult::out_of_domain();
    }
    let a = 1.0 - 2.0 * sigma;
    let t2 = t * t;
    let mut log_lhs = (a / (sigma * sigma + t2)).ln_1p();
    for n in 1..=3 {
        let nf = n as f64;
        log_lhs += (a * (4.0 * nf + 1.0) / ((2.0 * nf + sigma).powi(2) + t2)).ln_1p();
    }
    MarginResult::new(log_lhs.exp(), (a * PRODUCT_BASE.ln()).exp(), true)
}

/// Left side of the sufficient condition for [`lemma2_product`]:
/// `(1 + 1/q) ∏_{n ≤ 3} (1 − (1 + 4n)q/((1 + 2n)²(q + 4n²)))`, `q = (σ − 1)σ + t²`.
pub fn lemma2_reduced_lhs(sigma: f64, t: f64) -> f64 {
    let q = (sigma - 1.0) * sigma + t * t;
    let mut value = 1.0 + 1.0 / q;
    for n in 1..=3 {
        let nf = n as f64;
        value *= 1.0 - (1.0 + 4.0 * nf) * q / ((1.0 + 2.0 * nf).powi(2) * (q + 4.0 * nf * nf));
    }
    value
}

/// `lemma2_reduced_lhs(σ, t) < 1/4` for `0 < σ ≤ 1/2`, `t ≥ 12`.
pub fn lemma2_reduced(sigma: f64, t: f64) -> MarginResult {
    if !(sigma > 0.0 && sigma <= 0.5 && t >= 12.0 && t.is_finite()) {
        return MarginResult::out_of_domain();
    }
    MarginResult::new(lemma2_reduced_lhs(sigma, t), 0.25, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_x_min_constant() {
        assert_eq!(RECT_X_MIN, (1.0 + 3f64.sqrt()) / 4.0);
    }

    #[test]
    fn log_bound_examples() {
        let r = log_bound(LogBound::Eq4Lo, 1.0);
        assert!((r.lhs - 2.0 / 3.0).abs() < 1e-15);
        assert!((r.margin - 0.026_480_513_893_278_68).abs() < 1e-15);
        let r = log_bound(LogBound::Eq3Lo, -2.0);
        assert_eq!(r.lhs, -1.0);
        assert!((r.margin - 0.306_852_819_440_054_7).abs() < 1e-15);
        for x in [1e-2, 1e-3, 1e-4] {
            let r = log_bound(LogBound::Eq5Hi, x);
            assert!(r.margin > 0.0 && r.margin < x * x * x);
        }
        assert!(!log_bound(LogBound::Eq4Hi, -2.0).domain_ok);
        assert!(!log_bound(LogBound::Eq3Lo, -0.5).domain_ok);
        assert!(!log_bound(LogBound::Eq6Lo, 0.5).domain_ok);
        assert!(log_bound(LogBound::Eq6Hi, -0.5).margin > 0.0);
    }

    #[test]
    fn power_7_examples() {
        for x in [-5.0, -1.5, 0.3, 4.0] {
            let r = power_ineq_7(1.0, x);
            assert_eq!(r.margin, 0.0);
            assert!(!r.strict_expected);
        }
        let r = power_ineq_7(2.0, 1.0);
        assert!((r.lhs - 16.0 / 9.0).abs() < 1e-15);
        assert!((r.margin - 2.0 / 9.0).abs() < 1e-15);
        assert!(power_ineq_7(3.0, -2.0).margin >= 0.0);
        assert!(!power_ineq_7(0.5, 1.0).domain_ok);
        assert!(!power_ineq_7(2.0, -0.5).domain_ok);
        // zero base at x = -1
        assert!(!power_ineq_7(2.0, -1.0).domain_ok);
    }

    #[test]
    fn power_8_examples() {
        assert_eq!(power_ineq_8(3.0, 0.0).margin, 0.0);
        assert_eq!(power_ineq_8(1.0, 1.3).margin, 0.0);
        let r = power_ineq_8(2.0, 1.0);
        assert_eq!(r.lhs, 2.25);
        assert!((r.margin - 1.0 / 12.0).abs() < 1e-15);
        assert!(!power_ineq_8(2.0, 2.5).domain_ok);
    }

    #[test]
    fn power_a_examples() {
        for x in [-3.0, 0.2, 7.0] {
            assert!(power_ineq_a(PowerBound::Eq9, 1.0, x).margin.abs() < 1e-15);
            assert_eq!(power_ineq_a(PowerBound::Eq9, 0.0, x).margin, 0.0);
        }
        assert_eq!(power_ineq_a(PowerBound::Eq10, 0.0, 2.0).margin, 0.0);
        assert_eq!(power_ineq_a(PowerBound::Eq11, 0.0, -2.0).margin, 0.0);
        let r = power_ineq_a(PowerBound::Eq9, 0.5, 2.0);
        assert!((r.rhs - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((r.lhs - 1.2).abs() < 1e-15);
        assert!((r.margin - 0.024_744_871_391_589_05).abs() < 1e-15);
        assert!(power_ineq_a(PowerBound::Eq11, 0.5, -2.0).margin > 0.0);
        assert!(!power_ineq_a(PowerBound::Eq10, 0.5, -2.0).domain_ok);
        assert!(!power_ineq_a(PowerBound::Eq9, 1.5, 2.0).domain_ok);
    }

    fn rect_literal(x: f64, sigma: f64, t: f64) -> (f64, f64) {
        let lhs = ((2.0 * x + 1.0 - sigma).powi(2) + t * t) / ((2.0 * x + sigma).powi(2) + t * t);
        let q = (-1.0 + sigma) * sigma + t * t;
        let inner = ((2.0 * x + 1.0) / (2.0 * x)).powi(2)
            * (1.0 - (1.0 + 4.0 * x) * q / ((1.0 + 2.0 * x).powi(2) * (q + 4.0 * x * x)));
        (lhs, inner.powf(1.0 - 2.0 * sigma))
    }

    #[test]
    fn rect_examples() {
        let r = lemma2_rect(1.0, 0.25, 0.0);
        let (l, rr) = rect_literal(1.0, 0.25, 0.0);
        assert!((r.lhs - l).abs() < 1e-15 && (r.rhs - rr).abs() < 1e-15);
        // mpmath
        assert!((r.margin - 0.026_526_551_586_380_18).abs() < 1e-14);
        let r = lemma2_rect(RECT_X_MIN, 0.1, 5.0);
        assert!((r.margin - 5.918_094_645_870_46e-5).abs() < 1e-14);
        assert!(eq15_bound(RECT_X_MIN, 1.0 / (1.0 - 0.2), 5.0).margin >= 0.0);
        let near = lemma2_rect(2.0, 0.5 - 1e-9, 3.0);
        assert!(near.margin >= 0.0 && near.margin < 1e-8);
        assert!(!lemma2_rect(0.5, 0.25, 0.0).domain_ok);
        assert!(!lemma2_rect(1.0, 0.5, 0.0).domain_ok);
    }

    #[test]
    fn eq15_corner_is_equality() {
        let r = eq15_bound(RECT_X_MIN, 1.0, 0.0);
        assert!(r.margin.abs() < 1e-14);
        assert!(!r.strict_expected);
    }

    #[test]
    fn h1_examples() {
        let r = lemma2_h1(0.25, 1.0);
        assert!((r.lhs - 1.470_588_235_294_117_8).abs() < 1e-15);
        assert!((r.rhs - 1.493_575_987_611_353_7).abs() < 1e-15);
        assert!(lemma2_h1(0.01, 0.5).margin > 0.0);
        let near = lemma2_h1(0.5 - 1e-9, 2.0);
        assert!(near.margin >= 0.0 && near.margin < 1e-8);
        assert!(!lemma2_h1(0.25, 0.4).domain_ok);
    }

    #[test]
    fn product_examples() {
        // mpmath
        let r = lemma2_product(0.25, 12.0);
        assert!((r.margin - 7.885_092_972_262_467e-3).abs() < 1e-14);
        let r = lemma2_product(0.49, 12.0);
        assert!((r.margin - 2.894_127_426_136_378e-4).abs() < 1e-14);
        assert!(lemma2_product(0.1, 100.0).margin > lemma2_product(0.1, 12.0).margin);
        assert!(!lemma2_product(0.25, 11.0).domain_ok);
    }

    #[test]
    fn reduced_examples() {
        let anchor = lemma2_reduced(0.5, 12.0);
        assert!(anchor.domain_ok);
        assert!((anchor.lhs - 0.246_431_787_576_804_75).abs() < 1e-15);
        assert!(anchor.lhs < 0.25);
        assert!(lemma2_reduced(0.1, 12.0).lhs < anchor.lhs);
        assert!(lemma2_reduced(0.5, 20.0).lhs < anchor.lhs);
        assert!(!lemma2_reduced(0.6, 12.0).domain_ok);
    }

    #[test]
    fn reduced_lhs_monotone_on_grid() {
        // increasing in σ, decreasing in t on (0, 1/2] × [12, 200]
        for i in 1..=50 {
            let t = 12.0 + 3.76 * i as f64;
            let mut prev = lemma2_reduced_lhs(0.01, t);
            for j in 2..=50 {
                let v = lemma2_reduced_lhs(0.01 * j as f64, t);
                assert!(v > prev, "σ-monotonicity fails at t = {t}");
                prev = v;
            }
        }
        for j in 1..=50 {
            let sigma = 0.01 * j as f64;
            let mut prev = lemma2_reduced_lhs(sigma, 12.0);
            for i in 1..=100 {
                let v = lemma2_reduced_lhs(sigma, 12.0 + i as f64);
                assert!(v < prev, "t-monotonicity fails at σ = {sigma}");
                prev = v;
            }
        }
    }
}
