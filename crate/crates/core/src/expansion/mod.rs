//! Small-κ asymptotic expansions of the grand potential.
//!
//! Ω(κ) is written as a Mellin-Barnes integral over
//! (κβ)^{-s} Li_{s+1}(z) Γ(s) ζ_B(s, v|2); shifting the contour to
//! Re s = -1 + 0 picks up the poles of ζ_B at s = 1..v and of Γ at s = 0,
//! leaving a remainder of order κ. At μ = 0 the s = 0 pole becomes double,
//! and in the condensed regime the zero mode is split off and the shifted
//! fugacity is expanded in powers of μ̃ = μ - E_0, so that the poles of
//! ζ_R(s + 1 - m) also contribute.

mod contour;
mod fit;
mod geometric;

pub use fit::{fit_remainder, remainder_fit, RemainderFit, DEFAULT_KAPPA_GRID};
pub use geometric::{geometric_demo, GeometricDemo, CONTOUR_ABSCISSA, CONTOUR_HEIGHT};

use crate::error::{Error, Result};
use crate::specfun::{
    barnes_zeta_at_zero, barnes_zeta_decomposed, barnes_zeta_deriv_decomposed, barnes_zeta_laurent,
    barnes_zeta_residue, digamma, gamma_fn, polylog_exp, riemann_zeta, BarnesParams, SeriesAccuracy,
    EULER_GAMMA,
};
use serde::Serialize;

/// Which expansion an [`AsymptoticExpansion`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Subcritical,
    Critical,
    Condensed,
}

/// Thermodynamic phase of a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "phase", rename_all = "snake_case")]
pub enum Phase {
    Subcritical,
    Critical,
    /// `target_density` is ρ̄ in units of κ^{-v}.
    Condensed {
        target_density: f64,
    },
}

impl Phase {
    pub fn regime(&self) -> Regime {
        match self {
            Phase::Subcritical => Regime::Subcritical,
            Phase::Critical => Regime::Critical,
            Phase::Condensed { .. } => Regime::Condensed,
        }
    }
}

/// Coefficient of κ^{-k} (or κ^{-k} ln κ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub k: u32,
    pub value: f64,
}

/// Ω(κ) ≈ Σ_k a_{-k} κ^{-k} + log_coeff · ln κ + Σ_k b_k κ^{-k} ln κ + O(κ^remainder_order).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticExpansion {
    pub regime: Regime,
    /// a_{-k} for ascending k, starting at k = 0.
    pub coeffs: Vec<Term>,
    pub log_coeff: f64,
    /// b_k, the coefficients of κ^{-k} ln κ for k ≥ 1. Only the condensed
    /// expansion has these.
    pub log_terms: Vec<Term>,
    pub remainder_order: u32,
}

impl AsymptoticExpansion {
    pub fn coeff(&self, k: u32) -> f64 {
        self.coeffs.iter().find(|t| t.k == k).map_or(0.0, |t| t.value)
    }

    /// The κ-singular part: every term with k ≥ 1.
    pub fn singular_part(&self, kappa: f64) -> f64 {
        let ln_kappa = kappa.ln();
        let powers: f64 = self
            .coeffs
            .iter()
            .filter(|t| t.k >= 1)
            .map(|t| t.value * kappa.powi(-(t.k as i32)))
            .sum();
        let logs: f64 = self
            .log_terms
            .iter()
            .map(|t| t.value * kappa.powi(-(t.k as i32)) * ln_kappa)
            .sum();
        powers + logs
    }
}

/// Evaluates the expansion at `κ`. The condensed zero-mode term
/// -ln(1 - e^{βμ̃}) is not included.
pub fn evaluate(expansion: &AsymptoticExpansion, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
    }
    let regular = expansion.coeff(0) + expansion.log_coeff * kappa.ln();
    Ok(expansion.singular_part(kappa) + regular)
}

fn check_dimension(v: u32) -> Result<()> {
    if v == 0 {
        Err(Error::domain("dimension v must be at least 1"))
    } else {
        Ok(())
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("beta must be positive, got {beta}")))
    }
}

/// Fixed μ < 0.
pub fn coeffs_subcritical(v: u32, beta: f64, mu: f64, acc: &SeriesAccuracy) -> Result<AsymptoticExpansion> {
    check_dimension(v)?;
    check_beta(beta)?;
    if !(mu < 0.0) {
        return Err(Error::domain(format!(
            "subcritical expansion needs mu < 0, got {mu}"
        )));
    }
    let w = beta * mu;
    let trap = BarnesParams::trap(v)?;
    // Li_1(e^w) = -ln(1 - e^w)
    let li1 = -(-w.exp_m1()).ln();
    let mut coeffs = vec![Term {
        k: 0,
        value: li1 * barnes_zeta_at_zero(&trap)?,
    }];
    for k in 1..=v {
        let value = beta.powi(-(k as i32))
            * polylog_exp((k + 1) as f64, w, acc)?
            * gamma_fn(k as f64)?
            * barnes_zeta_residue(k, &trap)?;
        coeffs.push(Term { k, value });
    }
    Ok(AsymptoticExpansion {
        regime: Regime::Subcritical,
        coeffs,
        log_coeff: 0.0,
        log_terms: Vec::new(),
        remainder_order: 1,
    })
}

/// μ = 0. The s = 0 pole of ζ_R(s+1)Γ(s) is double, which leaves
/// -ζ_B(0)·ln κ plus the constant ζ_B'(0) - ζ_B(0)·ln β.
pub fn coeffs_critical(v: u32, beta: f64, acc: &SeriesAccuracy) -> Result<AsymptoticExpansion> {
    check_dimension(v)?;
    check_beta(beta)?;
    let trap = BarnesParams::trap(v)?;
    let z0 = barnes_zeta_at_zero(&trap)?;
    let z1 = barnes_zeta_deriv_decomposed(0.0, &trap, acc)?;
    let mut coeffs = vec![Term {
        k: 0,
        value: z1 - z0 * beta.ln(),
    }];
    for k in 1..=v {
        let value = beta.powi(-(k as i32))
            * riemann_zeta((k + 1) as f64, acc)?
            * gamma_fn(k as f64)?
            * barnes_zeta_residue(k, &trap)?;
        coeffs.push(Term { k, value });
    }
    Ok(AsymptoticExpansion {
        regime: Regime::Critical,
        coeffs,
        log_coeff: -z0,
        log_terms: Vec::new(),
        remainder_order: 1,
    })
}

/// Threshold on |a_{-k} κ^{-k}| that ends the tail of the condensed expansion.
pub const CONDENSED_TAIL_CUTOFF: f64 = 1e-15;
/// Threshold on successive terms of the μ̃ power series.
pub const MU_SERIES_TOL: f64 = 1e-14;
const MU_SERIES_MAX_TERMS: u32 = 400;
const TAIL_MAX_TERMS: u32 = 10_000;

/// Sum over m ≥ start (m ≠ skip) of x^m/m! · ζ_R(shift - m), stopped once two
/// consecutive terms are below [`MU_SERIES_TOL`].
fn mu_series(x: f64, shift: i64, start: u32, skip: Option<u32>, acc: &SeriesAccuracy) -> Result<f64> {
    let mut sum = 0.0;
    let mut small = 0;
    let mut xm_over_fact = 1.0;
    for m in 0..MU_SERIES_MAX_TERMS {
        if m > 0 {
            xm_over_fact *= x / m as f64;
        }
        if m < start || Some(m) == skip {
            continue;
        }
        let term = xm_over_fact * riemann_zeta((shift - m as i64) as f64, acc)?;
        sum += term;
        if term.abs() < MU_SERIES_TOL * sum.abs().max(1.0) {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence {
        max_terms: MU_SERIES_MAX_TERMS as usize,
    })
}

/// Fixed shifted chemical potential μ̃ = μ - κv < 0, with the zero mode split
/// off (see [`ground_state_potential`](crate::thermo::ground_state_potential)).
///
/// Terms with k > v are kept while |a_{-k} κ^{-k}| ≥ [`CONDENSED_TAIL_CUTOFF`],
/// which needs the evaluation point `kappa`.
pub fn coeffs_condensed(
    v: u32,
    beta: f64,
    mu_tilde: f64,
    kappa: f64,
    acc: &SeriesAccuracy,
) -> Result<AsymptoticExpansion> {
    check_dimension(v)?;
    check_beta(beta)?;
    if !(mu_tilde < 0.0) {
        return Err(Error::domain(format!(
            "condensed expansion needs mu_tilde < 0, got {mu_tilde}"
        )));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
    }
    let x = beta * mu_tilde;
    if x.abs() >= 2.0 * std::f64::consts::PI {
        return Err(Error::divergence(format!(
            "power series in beta*mu_tilde converges only for |beta*mu_tilde| < 2π, got {x}"
        )));
    }
    if mu_tilde.abs() >= 2.0 * kappa {
        return Err(Error::divergence(format!(
            "condensed tail needs |mu_tilde| < 2κ, got mu_tilde = {mu_tilde}, κ = {kappa}"
        )));
    }
    let shifted = BarnesParams::shifted_trap(v)?;
    let z0 = barnes_zeta_at_zero(&shifted)?;
    let z1 = barnes_zeta_deriv_decomposed(0.0, &shifted, acc)?;
    let ln_beta = beta.ln();

    // s = 0: double pole from m = 0, simple poles of Γ for m ≥ 1
    let a0 = z1 - z0 * ln_beta + z0 * mu_series(x, 1, 1, None, acc)?;
    let mut coeffs = vec![Term { k: 0, value: a0 }];
    let mut log_terms = Vec::new();

    // s = k ≤ v: pole of ζ_B, double where ζ_R(s + 1 - m) is singular too
    for k in 1..=v {
        let gk = gamma_fn(k as f64)?;
        let laurent = barnes_zeta_laurent(k, &shifted, acc)?;
        let simple = mu_series(x, (k + 1) as i64, 0, Some(k), acc)?;
        let amp = mu_tilde.powi(k as i32) / gamma_fn((k + 1) as f64)?;
        let double =
            amp * gk * (laurent.finite + laurent.residue * (EULER_GAMMA + digamma(k as f64) - ln_beta));
        let value = beta.powi(-(k as i32)) * gk * laurent.residue * simple + double;
        coeffs.push(Term { k, value });
        log_terms.push(Term {
            k,
            value: -amp * gk * laurent.residue,
        });
    }

    // s = k > v: poles of ζ_R(s + 1 - k) alone
    for k in (v + 1)..(v + 1 + TAIL_MAX_TERMS) {
        let zb = barnes_zeta_decomposed(k as f64, &shifted, acc)?;
        // μ̃^k/k! · Γ(k) = μ̃^k / k
        let value = mu_tilde.powi(k as i32) / k as f64 * zb;
        if (value * kappa.powi(-(k as i32))).abs() < CONDENSED_TAIL_CUTOFF {
            break;
        }
        coeffs.push(Term { k, value });
    }

    Ok(AsymptoticExpansion {
        regime: Regime::Condensed,
        coeffs,
        log_coeff: -z0,
        log_terms,
        remainder_order: 1,
    })
}

/// The μ̃ → 0 form used with the renormalized chemical potential: only the
/// m = 0 residues survive, a_0 = -ln β, and the log coefficient is that of the
/// double pole at s = 0.
///
/// This is a limit form. With μ̃ = -κ^v/(β(ρ̄ - ρ_c)) the m = 1 residue at
/// s = v stays O(1) and is not included; use [`coeffs_condensed`] for
/// quantitative comparisons at finite κ.
pub fn coeffs_renormalized(v: u32, beta: f64, acc: &SeriesAccuracy) -> Result<AsymptoticExpansion> {
    check_beta(beta)?;
    if v < 2 {
        return Err(Error::domain(
            "no condensation in v=1: the critical density is infinite",
        ));
    }
    let shifted = BarnesParams::shifted_trap(v)?;
    let z0 = barnes_zeta_at_zero(&shifted)?;
    let mut coeffs = vec![Term {
        k: 0,
        value: -beta.ln(),
    }];
    for k in 1..=v {
        let value = beta.powi(-(k as i32))
            * riemann_zeta((k + 1) as f64, acc)?
            * gamma_fn(k as f64)?
            * barnes_zeta_residue(k, &shifted)?;
        coeffs.push(Term { k, value });
    }
    Ok(AsymptoticExpansion {
        regime: Regime::Condensed,
        coeffs,
        log_coeff: -z0,
        log_terms: Vec::new(),
        remainder_order: 1,
    })
}
