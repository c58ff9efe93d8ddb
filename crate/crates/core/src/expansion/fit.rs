//! Empirical check of the remainder: after removing the κ-singular terms,
//! R(κ) = Ω_oracle(κ) - Σ_{k≥1} a_{-k} κ^{-k} is regressed on c_0 + c_L ln κ + c_1 κ.

use super::{coeffs_critical, coeffs_subcritical, AsymptoticExpansion};
use crate::error::{Error, Result};
use crate::specfun::SeriesAccuracy;
use crate::spectrum::{grand_potential_oracle, TrapParams};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

pub const DEFAULT_KAPPA_GRID: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderFit {
    /// Power p in R̃(κ) ~ κ^p after the constant and log terms are removed,
    /// measured between the largest and smallest grid points.
    pub empirical_order: f64,
    pub fitted_log_coeff: f64,
    pub fitted_const: f64,
    pub fitted_linear: f64,
    /// Largest |R(κ) - model(κ)| over the grid.
    pub max_misfit: f64,
}

fn validate_grid(kappas: &[f64]) -> Result<()> {
    if kappas.len() < 4 {
        return Err(Error::IllConditioned(format!(
            "need at least 4 grid points, got {}",
            kappas.len()
        )));
    }
    if kappas.iter().any(|k| !(*k > 0.0) || !k.is_finite()) {
        return Err(Error::domain("kappa grid must be positive and finite"));
    }
    if kappas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("kappa grid must be strictly descending"));
    }
    if kappas[0] / kappas[kappas.len() - 1] < 10.0 * (1.0 - 1e-12) {
        return Err(Error::IllConditioned(
            "kappa grid must span at least one decade".into(),
        ));
    }
    Ok(())
}

/// Least-squares fit of `remainders[i] ≈ c_0 + c_L ln κ_i + c_1 κ_i`.
pub fn fit_remainder(kappas: &[f64], remainders: &[f64]) -> Result<RemainderFit> {
    validate_grid(kappas)?;
    if kappas.len() != remainders.len() {
        return Err(Error::domain("grid and remainder lengths differ"));
    }
    let n = kappas.len();
    let design = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => kappas[i].ln(),
        _ => kappas[i],
    });
    let y = DVector::from_column_slice(remainders);
    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    if !(smin > 1e-12 * smax) {
        return Err(Error::IllConditioned(format!(
            "design matrix singular values {smax:e} / {smin:e}"
        )));
    }
    let c = svd
        .solve(&y, 1e-14 * smax)
        .map_err(|e| Error::IllConditioned(e.to_string()))?;
    let misfit = &design * &c - &y;
    let detrended = |i: usize| remainders[i] - c[0] - c[1] * kappas[i].ln();
    let (first, last) = (detrended(0), detrended(n - 1));
    let empirical_order = (first / last).ln() / (kappas[0] / kappas[n - 1]).ln();
    Ok(RemainderFit {
        empirical_order,
        fitted_log_coeff: c[1],
        fitted_const: c[0],
        fitted_linear: c[2],
        max_misfit: misfit.amax(),
    })
}

/// Fit against the level-sum oracle at fixed (v, β, μ) with μ ≤ 0, using the
/// subcritical expansion for μ < 0 and the critical one at μ = 0.
pub fn remainder_fit(
    v: u32,
    beta: f64,
    mu: f64,
    kappas: &[f64],
    acc: &SeriesAccuracy,
) -> Result<RemainderFit> {
    validate_grid(kappas)?;
    let expansion = fixed_mu_expansion(v, beta, mu, acc)?;
    let remainders = kappas
        .iter()
        .map(|&kappa| {
            let p = TrapParams::new(v, beta, kappa, mu)?;
            Ok(grand_potential_oracle(&p, acc)?.value - expansion.singular_part(kappa))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_remainder(kappas, &remainders)
}

fn fixed_mu_expansion(v: u32, beta: f64, mu: f64, acc: &SeriesAccuracy) -> Result<AsymptoticExpansion> {
    if mu == 0.0 {
        coeffs_critical(v, beta, acc)
    } else if mu < 0.0 {
        coeffs_subcritical(v, beta, mu, acc)
    } else {
        Err(Error::domain(format!(
            "fixed-mu remainder fit needs mu <= 0, got {mu}"
        )))
    }
}
