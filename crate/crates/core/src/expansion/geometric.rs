//! The one-dimensional warm-up: Σ_{n≥1} e^{-κn} via its Mellin-Barnes
//! representation with integrand κ^{-s} Γ(s) ζ(s).

use super::contour::riemann_zeta_complex;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Abscissa of the shifted contour, between the poles at `s = -1` and `s = 0`.
pub const CONTOUR_ABSCISSA: f64 = -0.5;
/// |Im s| beyond which the integrand is below ~1e-14 and is dropped.
pub const CONTOUR_HEIGHT: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometricDemo {
    pub kappa: f64,
    /// 1/(e^κ - 1)
    pub exact: f64,
    /// Residues at s = 1 and s = 0: κ^{-1} - 1/2.
    pub asymptotic: f64,
    /// Quadrature of the shifted contour integral.
    pub residual_numeric: f64,
    /// exact - asymptotic
    pub error: f64,
}

pub fn geometric_demo(kappa: f64) -> Result<GeometricDemo> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
    }
    let exact = 1.0 / kappa.exp_m1();
    let asymptotic = 1.0 / kappa - 0.5;
    Ok(GeometricDemo {
        kappa,
        exact,
        asymptotic,
        residual_numeric: shifted_contour_integral(kappa),
        error: exact - asymptotic,
    })
}

/// Γ(s)ζ(s) = (2π)^s ζ(1-s) / (2 cos(πs/2)), which only needs ζ where it is
/// easy to evaluate (Re(1-s) = 3/2 on the contour).
fn gamma_zeta(s: Complex64) -> Complex64 {
    let two_pi = Complex64::new(2.0 * PI, 0.0);
    two_pi.powc(s) * riemann_zeta_complex(1.0 - s) / (2.0 * (s * (PI / 2.0)).cos())
}

/// (1/2πi) ∫ κ^{-s} Γ(s) ζ(s) ds along Re s = σ̃. The integrand is
/// conjugate-symmetric, so this is (1/π) ∫_0^T Re[κ^{-s} Γ(s) ζ(s)] dt.
fn shifted_contour_integral(kappa: f64) -> f64 {
    let ln_kappa = kappa.ln();
    let integrand = |t: f64| {
        let s = Complex64::new(CONTOUR_ABSCISSA, t);
        ((-s * ln_kappa).exp() * gamma_zeta(s)).re
    };
    let out = quadrature::double_exponential::integrate(integrand, 0.0, CONTOUR_HEIGHT, 1e-15);
    out.integral / PI
}
