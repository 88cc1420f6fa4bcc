use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("pole of {function} at {re}{im:+}i")]
    Pole {
        function: &'static str,
        re: f64,
        im: f64,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation budget exceeded: {0}")]
    Truncation(String),
    #[error("non-finite input {re}{im:+}i")]
    NonFinite { re: f64, im: f64 },
    #[error("no sign change of the rotated zeta within {lo}..{hi}")]
    NoBracket { lo: f64, hi: f64 },
}

impl EvalError {
    pub(crate) fn pole(function: &'static str, z: num_complex::Complex64) -> Self {
        EvalError::Pole {
            function,
            re: z.re,
            im: z.im,
        }
    }

    /// Short machine-readable tag, used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            EvalError::Pole { .. } => "pole",
            EvalError::Domain(_) => "domain",
            EvalError::Truncation(_) => "truncation",
            EvalError::NonFinite { .. } => "non_finite",
            EvalError::NoBracket { .. } => "no_bracket",
        }
    }
}

pub type Result<T> = std::result::Result<T, EvalError>;
