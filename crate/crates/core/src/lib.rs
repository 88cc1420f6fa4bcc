//! Numerical companion to the inequality `|ζ(1 − s)| ≤ |ζ(s)|` on the left
//! half of the critical strip.
//!
//! The crate evaluates `ζ`, `ζ′`, complex `log Γ` and the chi factor
//! `g(s) = π^{1/2 − s} Γ(s/2)/Γ(1/2 − s/2)`, exposes the factors of the
//! product decomposition of `g`, checks the elementary inequalities the
//! argument is built on, and scans rectangles of the strip for the resulting
//! bounds.

mod cmath;
pub mod chi;
pub mod error;
pub mod gamma;
pub mod lemmas;
pub mod point;
pub mod products;
pub mod scan;
pub mod zeta;

pub use chi::{
    chi, chi_identity_residual, chi_vs_product_residual, f_abs, h2_term, h_partial,
    ChiDecomposition,
};
pub use error::{EvalError, Result};
pub use gamma::{gamma_half_ratio, ln_gamma};
pub use lemmas::MarginResult;
pub use point::{ComplexPoint, EvalConfig};
pub use products::{telescoping_partial, wallis_partial};
pub use zeta::{zeta, zeta_deriv};
