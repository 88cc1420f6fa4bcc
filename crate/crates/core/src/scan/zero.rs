//! Zeros on the critical line via the real, phase-rotated zeta function.

use num_complex::Complex64;

use crate::error::{EvalError, Result};
use crate::gamma::ln_gamma;
use crate::point::EvalConfig;
use crate::zeta::zeta;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const BRACKET_HALF_WIDTH: f64 = 0.5;
const BRACKET_STEP: f64 = 0.01;

/// `Z(t) = e^{iθ(t)} ζ(1/2 + it)` with `θ(t) = arg Γ(1/4 + it/2) − (t/2) ln π`.
/// Real for real `t`, with `|Z(t)| = |ζ(1/2 + it)|`.
pub fn rotated_zeta(t: f64, cfg: &EvalConfig) -> Result<f64> {
    let theta = ln_gamma(Complex64::new(0.25, 0.5 * t), cfg)?.im - 0.5 * t * LN_PI;
    let z = Complex64::from_polar(1.0, theta) * zeta(Complex64::new(0.5, t), cfg)?;
    Ok(z.re)
}

/// Ordinate `t*` of a zero of `ζ(1/2 + it)` near `t_guess`, refined until
/// `|ζ(1/2 + it*)| ≤ tol` or the bracket shrinks to adjacent floats.
///
/// `Z` is sampled on `t_guess ± 0.5` in steps of 0.01; of the sign changes
/// found, the one closest to `t_guess` is bisected.
pub fn locate_zero(t_guess: f64, tol: f64, cfg: &EvalConfig) -> Result<f64> {
    if !t_guess.is_finite() || !(tol > 0.0) {
        return Err(EvalError::Domain(format!(
            "locate_zero needs finite t_guess and positive tol, got {t_guess}, {tol}"
        )));
    }
    let lo_edge = t_guess - BRACKET_HALF_WIDTH;
    let steps = (2.0 * BRACKET_HALF_WIDTH / BRACKET_STEP).round() as usize;
    let ts: Vec<f64> = (0..=steps).map(|k| lo_edge + k as f64 * BRACKET_STEP).collect();
    let values = ts.iter().map(|&t| rotated_zeta(t, cfg)).collect::<Result<Vec<_>>>()?;

    if let Some(k) = values.iter().position(|v| *v == 0.0) {
        return Ok(ts[k]);
    }
    let bracket = (0..steps)
        .filter(|&k| values[k].signum() != values[k + 1].signum())
        .min_by(|&a, &b| {
            let da = (0.5 * (ts[a] + ts[a + 1]) - t_guess).abs();
            let db = (0.5 * (ts[b] + ts[b + 1]) - t_guess).abs();
            da.total_cmp(&db)
        })
        .ok_or(EvalError::NoBracket { lo: lo_edge, hi: lo_edge + 2.0 * BRACKET_HALF_WIDTH })?;

    let (mut lo, mut hi) = (ts[bracket], ts[bracket + 1]);
    let mut f_lo = values[bracket];
    loop {
        let mid = 0.5 * (lo + hi);
        let f_mid = rotated_zeta(mid, cfg)?;
        if f_mid.abs() <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotated_zeta_matches_modulus() {
        let cfg = EvalConfig::default();
        for t in [3.0, 10.0, 17.5, 33.3] {
            let z = rotated_zeta(t, &cfg).unwrap();
            let m = zeta(Complex64::new(0.5, t), &cfg).unwrap().norm();
            assert!((z.abs() - m).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn first_two_zeros() {
        let cfg = EvalConfig::default();
        let t1 = locate_zero(14.0, 1e-12, &cfg).unwrap();
        assert!((t1 - 14.134_725_141_734_694).abs() < 1e-10, "{t1}");
        let t2 = locate_zero(21.0, 1e-12, &cfg).unwrap();
        assert!((t2 - 21.022_039_638_771_555).abs() < 1e-10, "{t2}");
        assert!(zeta(Complex64::new(0.5, t1), &cfg).unwrap().norm() < 1e-8);
    }

    #[test]
    fn gap_has_no_bracket() {
        let cfg = EvalConfig::default();
        match locate_zero(13.0, 1e-12, &cfg) {
            Err(EvalError::NoBracket { .. }) => {}
            other => panic!("expected NoBracket, got {other:?}"),
        }
    }
}
