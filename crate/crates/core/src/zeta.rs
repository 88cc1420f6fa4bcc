//! Riemann zeta function and its derivative.
//!
//! For `Re s > 0` the zeta function is `η(s) / (1 − 2^{1−s})`, with the
//! Dirichlet eta series summed by Borwein's Chebyshev-weighted alternating
//! scheme. For `Re s ≤ 0` the functional equation is applied once, mapping the
//! point to `Re(1 − s) ≥ 1`. An Euler–Maclaurin evaluator with its own
//! derivative is kept as an independent route.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::rc::Rc;

use num_complex::Complex64;

use crate::cmath::{distance_to_nonpositive_integer, exp_m1};
use crate::error::{EvalError, Result};
use crate::gamma::ln_gamma;
use crate::point::{check_finite, EvalConfig, POLE_GUARD};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// ln(3 + √8): per-term convergence rate of the eta weights.
const LN_BORWEIN_RATE: f64 = 1.762_747_174_039_086;

/// Below this, `1 − 2^{1−s}` is too close to one of its zeros on `Re s = 1`
/// for the eta route; Euler–Maclaurin takes over.
const ETA_DENOM_FLOOR: f64 = 1e-8;

/// `B_{2j} / (2j)!` for j = 1..=15.
const EM_COEFFS: [f64; 15] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_768e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_7e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_2e-19,
    3.534_707_039_629_467e-21,
    -8.953_517_427_037_546e-23,
    2.267_952_452_337_683e-24,
];

thread_local! {
    static WEIGHT_CACHE: RefCell<HashMap<usize, Rc<Vec<f64>>>> = RefCell::new(HashMap::new());
}

/// Weights `(d_n − d_k) / d_n`, k = 0..n, of the accelerated eta series, where
/// `d_k = n Σ_{i ≤ k} (n + i − 1)! 4^i / ((n − i)! (2i)!)`.
fn eta_weights(n: usize) -> Rc<Vec<f64>> {
    WEIGHT_CACHE.with(|cache| {
        if let Some(w) = cache.borrow().get(&n) {
            return Rc::clone(w);
        }
        let w = Rc::new(compute_eta_weights(n));
        cache.borrow_mut().insert(n, Rc::clone(&w));
        w
    })
}

fn compute_eta_weights(n: usize) -> Vec<f64> {
    // log of the summands of d_k, built from the ratio of consecutive terms
    let nf = n as f64;
    let mut log_terms = Vec::with_capacity(n + 1);
    let mut current = 0.0;
    log_terms.push(current);
    for i in 0..n {
        let fi = i as f64;
        current += (4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0))).ln();
        log_terms.push(current);
    }
    let peak = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = log_terms.iter().map(|l| (l - peak).exp()).collect();
    // suffix sums avoid the cancellation in d_n − d_k
    let mut suffix = vec![0.0; n + 1];
    let mut acc = 0.0;
    for k in (0..=n).rev() {
        suffix[k] = acc;
        acc += scaled[k];
    }
    let total = acc;
    suffix.truncate(n);
    suffix.iter().map(|s| s / total).collect()
}

/// Number of eta terms for the requested accuracy, from the a-priori bound
/// `3 (1 + 2|t|) e^{π|t|/2} / (3 + √8)^n`.
fn eta_term_count(s: Complex64, cfg: &EvalConfig, extra: usize) -> Result<usize> {
    let t = s.im.abs();
    let eps = 0.1 * cfg.target_abs_error();
    let bound = ((3.0 / eps).ln() + (1.0 + 2.0 * t).ln() + 0.5 * PI * t) / LN_BORWEIN_RATE;
    let n = bound.ceil() as usize + 2 + extra;
    if n > cfg.max_terms() {
        return Err(EvalError::Truncation(format!(
            "eta series needs {n} terms at t = {t}, budget is {}",
            cfg.max_terms()
        )));
    }
    Ok(n)
}

/// Accelerated Dirichlet eta, and optionally its derivative.
fn eta_with_deriv(s: Complex64, cfg: &EvalConfig, want_deriv: bool) -> Result<(Complex64, Complex64)> {
    let n = eta_term_count(s, cfg, if want_deriv { 3 } else { 0 })?;
    let weights = eta_weights(n);
    let mut eta = Complex64::new(0.0, 0.0);
    let mut deta = Complex64::new(0.0, 0.0);
    for (k, &w) in weights.iter().enumerate() {
        let ln_m = ((k + 1) as f64).ln();
        let term = (-s * ln_m).exp() * w;
        if k % 2 == 0 {
            eta += term;
            deta -= term * ln_m;
        } else {
            eta -= term;
            deta += term * ln_m;
        }
    }
    Ok((eta, deta))
}

/// `1 − 2^{1−s}`, accurate near `s = 1`.
fn eta_denominator(s: Complex64) -> Complex64 {
    -exp_m1((1.0 - s) * LN_2)
}

fn check_zeta_pole(s: Complex64) -> Result<()> {
    if (s - 1.0).norm() < POLE_GUARD {
        Err(EvalError::pole("zeta", s))
    } else {
        Ok(())
    }
}

/// `(s − 1) ζ(s)` for `Re s > 0`; entire there, so it stays finite at `s = 1`.
fn zeta_times_s_minus_one(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let denom = eta_denominator(s);
    let s_minus_one = s - 1.0;
    if denom.norm() < ETA_DENOM_FLOOR && s_minus_one.norm() > 0.1 {
        return Ok(s_minus_one * zeta_euler_maclaurin(s)?);
    }
    let (eta, _) = eta_with_deriv(s, cfg, false)?;
    let factor = if s_minus_one.norm() < POLE_GUARD {
        Complex64::new(1.0 / LN_2, 0.0)
    } else {
        s_minus_one / denom
    };
    Ok(eta * factor)
}

/// The Riemann zeta function.
pub fn zeta(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    check_finite(s)?;
    check_zeta_pole(s)?;
    if s.re > 0.0 {
        return Ok(zeta_times_s_minus_one(s, cfg)? / (s - 1.0));
    }
    // ζ(s) = π^{s−1/2} Γ((1−s)/2)/Γ(s/2) ζ(1−s), rewritten with
    // Γ(s/2) = Γ(1+s/2)/(s/2) and ζ(1−s) = [(−s) ζ(1−s)]/(−s) so that s = 0 is
    // regular.
    let upper = 1.0 + 0.5 * s;
    if distance_to_nonpositive_integer(upper) < POLE_GUARD {
        // trivial zeros at s = −2, −4, ...
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = 1.0 - s;
    let log_factor = (s - 0.5) * LN_PI + ln_gamma(0.5 * w, cfg)? - ln_gamma(upper, cfg)?;
    Ok(-0.5 * log_factor.exp() * zeta_times_s_minus_one(w, cfg)?)
}

/// `ζ′(s)` for `Re s > 0`, by termwise differentiation of the eta series.
pub fn zeta_deriv(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(zeta_and_deriv(s, cfg)?.1)
}

/// `(ζ(s), ζ′(s))` for `Re s > 0`, sharing one pass over the eta series.
pub fn zeta_and_deriv(s: Complex64, cfg: &EvalConfig) -> Result<(Complex64, Complex64)> {
    check_finite(s)?;
    check_zeta_pole(s)?;
    if s.re <= 0.0 {
        return Err(EvalError::Domain(format!(
            "zeta derivative is only provided for Re s > 0, got {s}"
        )));
    }
    let denom = eta_denominator(s);
    if denom.norm() < ETA_DENOM_FLOOR {
        // s sits on a zero of 1 − 2^{1−s} other than s = 1 (that one is
        // excluded by the much larger pole neighbourhood below)
        if (s - 1.0).norm() > 0.1 {
            return zeta_euler_maclaurin_with_deriv(s);
        }
    }
    let (eta, deta) = eta_with_deriv(s, cfg, true)?;
    let zeta = eta / denom;
    let ddenom = LN_2 * (1.0 - denom);
    Ok((zeta, (deta - zeta * ddenom) / denom))
}

/// Euler–Maclaurin summation of the zeta series; valid for every `s ≠ 1` with
/// moderate `|s|`.
pub fn zeta_euler_maclaurin(s: Complex64) -> Result<Complex64> {
    Ok(zeta_euler_maclaurin_with_deriv(s)?.0)
}

/// Euler–Maclaurin value and termwise derivative.
pub fn zeta_euler_maclaurin_with_deriv(s: Complex64) -> Result<(Complex64, Complex64)> {
    check_finite(s)?;
    check_zeta_pole(s)?;
    let cutoff = (30.0 + s.norm()).ceil() as usize;
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for k in 1..cutoff {
        let ln_k = (k as f64).ln();
        let term = (-s * ln_k).exp();
        value += term;
        deriv -= term * ln_k;
    }
    let n = cutoff as f64;
    let ln_n = n.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let sm1 = s - 1.0;
    let head = n_pow * n / sm1;
    value += head + 0.5 * n_pow;
    deriv += -ln_n * head - head / sm1 - 0.5 * ln_n * n_pow;

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut poly = s; // rising product
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut n_factor = n_pow / n;
    for (j, &c) in EM_COEFFS.iter().enumerate() {
        if j > 0 {
            let a = s + (2 * j - 1) as f64;
            let b = s + (2 * j) as f64;
            dpoly = dpoly * a * b + poly * (a + b);
            poly = poly * a * b;
            n_factor /= n * n;
        }
        value += c * poly * n_factor;
        deriv += c * (dpoly - ln_n * poly) * n_factor;
    }
    Ok((value, deriv))
}
