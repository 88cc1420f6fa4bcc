use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};

/// Guard radius around s = 1 and the gamma poles.
pub const POLE_GUARD: f64 = 1e-12;

/// A point `sigma + i t` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if sigma.is_finite() && t.is_finite() {
            Ok(ComplexPoint { sigma, t })
        } else {
            Err(EvalError::NonFinite { re: sigma, im: t })
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.to_complex()
    }
}

impl TryFrom<Complex64> for ComplexPoint {
    type Error = EvalError;

    fn try_from(z: Complex64) -> Result<Self> {
        ComplexPoint::new(z.re, z.im)
    }
}

/// Accuracy target and term budget for the series and products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    target_abs_error: f64,
    max_terms: usize,
}

impl EvalConfig {
    pub fn new(target_abs_error: f64, max_terms: usize) -> Result<Self> {
        if !(target_abs_error > 0.0 && target_abs_error.is_finite()) {
            return Err(EvalError::Domain(format!(
                "target_abs_error must be positive, got {target_abs_error}"
            )));
        }
        if max_terms == 0 {
            return Err(EvalError::Domain("max_terms must be at least 1".into()));
        }
        Ok(EvalConfig {
            target_abs_error,
            max_terms,
        })
    }

    pub fn target_abs_error(&self) -> f64 {
        self.target_abs_error
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_abs_error: 1e-12,
            max_terms: 10_000,
        }
    }
}

pub(crate) fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(EvalError::NonFinite { re: z.re, im: z.im })
    }
}
