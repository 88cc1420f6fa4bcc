//! The chi factor `g(s) = π^{1/2 − s} Γ(s/2) / Γ(1/2 − s/2)` of
//! `ζ(1 − s) = g(s) ζ(s)`, and its product decomposition
//! `g = f · h₁ · h₂` with
//!
//! * `|f(s)| = 2^{1 − 2σ}`,
//! * `h₁(s) = (1 − s)/s`,
//! * `h₂(s) = ∏_n (2n/(2n + 1))^{1 − 2s} (2n + 1 − s)/(2n + s)`.
//!
//! `g` itself is evaluated through log-gamma; the products only enter as the
//! truncated bound `|h_N(s)| = |h₁(s)| ∏_{n ≤ N} h_{2,n}(σ, t)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{EvalError, Result};
use crate::gamma::ln_gamma_half_ratio;
use crate::point::{check_finite, EvalConfig, POLE_GUARD};
use crate::zeta::zeta;

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Floor under `|ζ(s)|` when normalising the functional-equation residual.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

/// `g(s)`.
pub fn chi(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(ln_chi(s, cfg)?.exp())
}

/// `log g(s)` on the branch inherited from log-gamma.
pub fn ln_chi(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    check_finite(s)?;
    Ok((0.5 - s) * LN_PI + ln_gamma_half_ratio(s, cfg)?)
}

/// `|f(s)| = 2^{1 − 2σ}`.
pub fn f_abs(sigma: f64) -> f64 {
    (1.0 - 2.0 * sigma).exp2()
}

/// `|h₁(s)| = |(1 − s)/s|`.
pub fn h1_abs(s: Complex64) -> Result<f64> {
    check_finite(s)?;
    if s.norm() < POLE_GUARD {
        return Err(EvalError::Domain("h1 is undefined at s = 0".into()));
    }
    Ok(((1.0 - s) / s).norm())
}

/// `((2n + 1 − σ)² + t²) / ((2n + σ)² + t²)` written as
/// `1 + (1 − 2σ)(4n + 1) / ((2n + σ)² + t²)`.
pub fn h2_quotient(n: f64, sigma: f64, t: f64) -> Result<f64> {
    Ok(1.0 + h2_quotient_excess(n, sigma, t)?)
}

fn h2_quotient_excess(n: f64, sigma: f64, t: f64) -> Result<f64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(EvalError::Domain(format!("h2 index must be positive, got {n}")));
    }
    if !(sigma.is_finite() && t.is_finite()) {
        return Err(EvalError::NonFinite { re: sigma, im: t });
    }
    let denom = (2.0 * n + sigma).powi(2) + t * t;
    if denom == 0.0 {
        return Err(EvalError::Domain(format!(
            "h2 denominator vanishes at n = {n}, s = {sigma}{t:+}i"
        )));
    }
    Ok((1.0 - 2.0 * sigma) * (4.0 * n + 1.0) / denom)
}

/// `ln h_{2,n}(σ, t)`; `n` may be any positive real.
pub fn ln_h2_term(n: f64, sigma: f64, t: f64) -> Result<f64> {
    let excess = h2_quotient_excess(n, sigma, t)?;
    let exponent = 1.0 - 2.0 * sigma;
    Ok(-exponent * (0.5 / n).ln_1p() + 0.5 * excess.ln_1p())
}

/// `h_{2,n}(σ, t) = (2n/(2n + 1))^{1 − 2σ} |(2n + 1 − s)/(2n + s)|`.
pub fn h2_term(n: f64, sigma: f64, t: f64) -> Result<f64> {
    Ok(ln_h2_term(n, sigma, t)?.exp())
}

/// `|h_N(s)| = |h₁(s)| ∏_{n ≤ N} h_{2,n}(σ, t)`.
pub fn h_partial(n_terms: usize, s: Complex64) -> Result<f64> {
    let decomposition = ChiDecomposition::new(s, n_terms)?;
    Ok(decomposition.h_abs())
}

/// Snapshot of the decomposition factors at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiDecomposition {
    pub f_abs: f64,
    pub h1_abs: f64,
    pub h2_partial: f64,
    pub n_terms: usize,
}

impl ChiDecomposition {
    pub fn new(s: Complex64, n_terms: usize) -> Result<Self> {
        if n_terms == 0 {
            return Err(EvalError::Domain("N must be at least 1".into()));
        }
        let h1 = h1_abs(s)?;
        let mut log_h2 = 0.0;
        for n in 1..=n_terms {
            log_h2 += ln_h2_term(n as f64, s.re, s.im)?;
        }
        Ok(ChiDecomposition {
            f_abs: f_abs(s.re),
            h1_abs: h1,
            h2_partial: log_h2.exp(),
            n_terms,
        })
    }

    /// `|h_N(s)|`.
    pub fn h_abs(&self) -> f64 {
        self.h1_abs * self.h2_partial
    }

    /// `|f(s)| |h_N(s)|`, an upper bound for `|g(s)|` on the left half-strip.
    pub fn bound(&self) -> f64 {
        self.f_abs * self.h_abs()
    }
}

/// `|ζ(1 − s) − g(s) ζ(s)| / max(|ζ(s)|, 1e-30)`.
pub fn chi_identity_residual(s: Complex64, cfg: &EvalConfig) -> Result<f64> {
    let g = chi(s, cfg)?;
    let z = zeta(s, cfg)?;
    let reflected = zeta(1.0 - s, cfg)?;
    Ok((reflected - g * z).norm() / z.norm().max(RESIDUAL_FLOOR))
}

/// `|f(σ)| |h_N(s)| − |g(s)|`: the slack of the truncated-product bound.
pub fn chi_vs_product_residual(s: Complex64, n_terms: usize, cfg: &EvalConfig) -> Result<f64> {
    let bound = ChiDecomposition::new(s, n_terms)?.bound();
    Ok(bound - chi(s, cfg)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chi_spot_values() {
        let cfg = EvalConfig::default();
        assert!((chi(c(0.5, 0.0), &cfg).unwrap() - 1.0).norm() < 1e-15);
        let two = chi(c(2.0, 0.0), &cfg).unwrap();
        assert!((two - c(-0.5 / (PI * PI), 0.0)).norm() < 1e-15);
        assert!((two * PI * PI / 6.0 - c(-1.0 / 12.0, 0.0)).norm() < 1e-15);
        // mpmath |g(0.25+12i)|
        let g = chi(c(0.25, 12.0), &cfg).unwrap();
        assert!((g.norm() - 0.850_693_752_232_045_4).abs() < 1e-13);
    }

    #[test]
    fn chi_poles() {
        let cfg = EvalConfig::default();
        for s in [0.0, -2.0, -4.0, 1.0, 3.0] {
            assert!(matches!(chi(c(s, 0.0), &cfg), Err(EvalError::Pole { .. })), "{s}");
        }
    }

    #[test]
    fn f_abs_values() {
        assert_eq!(f_abs(0.5), 1.0);
        assert_eq!(f_abs(0.0), 2.0);
        assert!((f_abs(0.25) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn h2_term_values() {
        // sqrt(2/3) * 2.75/2.25, evaluated in mpmath
        assert!((h2_term(1.0, 0.25, 0.0).unwrap() - 0.997_940_265_578_331_8).abs() < 1e-15);
        for n in [1.0, 2.5, 40.0] {
            for t in [0.0, 3.0, -12.0] {
                assert!((h2_term(n, 0.5, t).unwrap() - 1.0).abs() < 1e-15);
            }
        }
        assert!(h2_term(1.0, 0.25, 12.0).unwrap() < h2_term(1.0, 0.25, 0.0).unwrap());
        assert!(h2_term(0.0, 0.25, 1.0).is_err());
        assert!(h2_term(1.0, -2.0, 0.0).is_err());
    }

    #[test]
    fn quotient_form_matches_literal_ratio() {
        for &(n, sigma, t) in &[(1.0f64, 0.1f64, 0.3f64), (7.0, 0.45, 20.0), (0.3, 0.2, -4.0)] {
            let lit = ((2.0 * n + 1.0 - sigma).powi(2) + t * t) / ((2.0 * n + sigma).powi(2) + t * t);
            assert!((h2_quotient(n, sigma, t).unwrap() - lit).abs() < 1e-15);
        }
    }

    #[test]
    fn h_partial_behaviour() {
        let s = c(0.5, 12.0);
        assert!(h_partial(3, s).unwrap() < 1.0 + 1e-15);
        let s = c(0.25, 12.0);
        assert!(h_partial(2, s).unwrap() < h_partial(1, s).unwrap());
        assert!(h_partial(3, c(0.0, 0.0)).is_err());
        assert!(h_partial(0, s).is_err());
    }

    #[test]
    fn decomposition_fields() {
        let d = ChiDecomposition::new(c(0.25, 12.0), 3).unwrap();
        assert_eq!(d.f_abs, 2f64.powf(0.5));
        assert!(d.h2_partial > 0.0 && d.h2_partial <= 1.0);
        assert_eq!(d.n_terms, 3);
        assert!((d.h_abs() - h_partial(3, c(0.25, 12.0)).unwrap()).abs() < 1e-16);
    }

    #[test]
    fn product_bound_gap() {
        let cfg = EvalConfig::default();
        let s = c(0.25, 12.0);
        let g3 = chi_vs_product_residual(s, 3, &cfg).unwrap();
        let g100 = chi_vs_product_residual(s, 100, &cfg).unwrap();
        assert!(g3 >= 0.0 && g100 >= 0.0 && g100 < g3);
        // the bound converges to |g| itself
        let g_far = chi_vs_product_residual(s, 200_000, &cfg).unwrap();
        assert!(g_far < 1e-4, "{g_far}");
        let line = chi_vs_product_residual(c(0.5, 17.0), 10, &cfg).unwrap();
        assert!(line.abs() < 1e-13);
    }

    #[test]
    fn functional_equation_residuals() {
        let cfg = EvalConfig::default();
        assert!(chi_identity_residual(c(2.0, 0.0), &cfg).unwrap() < 1e-12);
        assert!(chi_identity_residual(c(0.3, 20.0), &cfg).unwrap() < 1e-9);
        assert!(chi_identity_residual(c(0.5, 14.134_725_1), &cfg).unwrap() < 1e-6);
    }
}
