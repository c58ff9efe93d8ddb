//! Special-function kernel: Bernoulli numbers and generalized Bernoulli
//! polynomials, Γ, Riemann and Hurwitz ζ, the real polylogarithm and the
//! Barnes ζ-function of the oscillator spectrum.
//!
//! Everything here is a pure function of its arguments. The only shared state
//! is the Bernoulli number cache, which is filled under a lock and only ever
//! grows.

mod barnes;
mod bernoulli;
mod gamma;
mod polylog;
mod zeta;

pub use barnes::{
    barnes_zeta_at_zero, barnes_zeta_decomposed, barnes_zeta_deriv_decomposed, barnes_zeta_laurent,
    barnes_zeta_residue, barnes_zeta_residue_decomposed, barnes_zeta_value, degeneracy_poly_coeffs,
    BarnesLaurent, BarnesParams,
};
pub use bernoulli::{
    bernoulli_number, bernoulli_number_f64, bernoulli_poly, gen_bernoulli_poly, gen_bernoulli_poly_exact,
};
pub use gamma::{digamma, gamma_fn, harmonic_number, ln_gamma, EULER_GAMMA};
pub use polylog::{polylog, polylog_exp};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_deriv, riemann_zeta, riemann_zeta_deriv};

use crate::error::{Error, Result};

/// Truncation control for the infinite series evaluated in this crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SeriesAccuracy {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl SeriesAccuracy {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(Error::domain(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(SeriesAccuracy { abs_tol, max_terms })
    }
}

impl Default for SeriesAccuracy {
    fn default() -> Self {
        SeriesAccuracy {
            abs_tol: 1e-12,
            max_terms: 10_000_000,
        }
    }
}

/// True if `x` is an integer representable exactly as `i64`.
pub(crate) fn as_integer(x: f64) -> Option<i64> {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
        Some(x as i64)
    } else {
        None
    }
}
