//! Densities per characteristic volume κ^{-v}, the critical density, the
//! renormalized chemical potential and phase classification.

use crate::error::{Error, Result};
use crate::expansion::Phase;
use crate::specfun::{polylog_exp, riemann_zeta, SeriesAccuracy};
use crate::spectrum::{energy_oracle, ground_state_density_oracle, particle_number_oracle, TrapParams};
use serde::Serialize;

/// Lower end of the bracket for βμ; e^{-700} is near the bottom of the f64 range.
pub const BETA_MU_FLOOR: f64 = -700.0;
/// Absolute density residual accepted by [`solve_mu_for_density`].
pub const DENSITY_RESIDUAL: f64 = 1e-10;

fn check_inputs(v: u32, beta: f64) -> Result<()> {
    if v == 0 {
        return Err(Error::domain("dimension v must be at least 1"));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

/// ρ = 2^{-v} β^{-v} Li_v(e^{βμ}), the κ → 0 density at fixed μ ≤ 0.
pub fn density_subcritical(v: u32, beta: f64, mu: f64, acc: &SeriesAccuracy) -> Result<f64> {
    check_inputs(v, beta)?;
    if !(mu <= 0.0) {
        return Err(Error::domain(format!(
            "density_subcritical needs mu <= 0, got {mu}"
        )));
    }
    Ok((2.0 * beta).powi(-(v as i32)) * polylog_exp(v as f64, beta * mu, acc)?)
}

/// ρ_E = v 2^{-v} β^{-v-1} Li_{v+1}(e^{βμ}).
pub fn energy_density_subcritical(v: u32, beta: f64, mu: f64, acc: &SeriesAccuracy) -> Result<f64> {
    check_inputs(v, beta)?;
    if !(mu <= 0.0) {
        return Err(Error::domain(format!(
            "energy_density_subcritical needs mu <= 0, got {mu}"
        )));
    }
    Ok(v as f64 * (2.0 * beta).powi(-(v as i32)) / beta * polylog_exp((v + 1) as f64, beta * mu, acc)?)
}

/// ρ_c = 2^{-v} β^{-v} ζ(v), the largest density reachable with μ ≤ 0.
pub fn critical_density(v: u32, beta: f64, acc: &SeriesAccuracy) -> Result<f64> {
    check_inputs(v, beta)?;
    if v == 1 {
        return Err(Error::divergence("critical density is infinite for v = 1"));
    }
    Ok((2.0 * beta).powi(-(v as i32)) * riemann_zeta(v as f64, acc)?)
}

/// The unique μ < 0 with `density_subcritical(v, β, μ) = ρ̄`, by bisection in βμ.
pub fn solve_mu_for_density(v: u32, beta: f64, rho_bar: f64, acc: &SeriesAccuracy) -> Result<f64> {
    check_inputs(v, beta)?;
    if !(rho_bar > 0.0) || !rho_bar.is_finite() {
        return Err(Error::domain(format!(
            "target density must be positive, got {rho_bar}"
        )));
    }
    if v >= 2 {
        let rho_c = critical_density(v, beta, acc)?;
        if rho_bar >= rho_c {
            return Err(Error::domain(format!(
                "target density {rho_bar} is not below the critical density {rho_c}"
            )));
        }
    }
    let density = |w: f64| density_subcritical(v, beta, w / beta, acc);
    let mut lo = BETA_MU_FLOOR;
    if density(lo)? >= rho_bar {
        return Err(Error::Bracket(format!(
            "density {rho_bar} requires beta*mu below {BETA_MU_FLOOR}"
        )));
    }
    if v == 1 {
        // Li_1(e^w) = -ln(1 - e^w) grows only logarithmically as w → 0⁻
        let reachable = density(-f64::MIN_POSITIVE)?;
        if rho_bar >= reachable {
            return Err(Error::range(format!(
                "density {rho_bar} needs beta*mu closer to 0 than f64 resolves (max {reachable:.1})"
            )));
        }
    }
    let mut hi = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        // v = 1 diverges at μ = 0, which only ever sits at the upper end
        let rho = density(mid)?;
        if rho < rho_bar {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = 0.5 * (lo + hi);
    let residual = (density(w)? - rho_bar).abs();
    if residual > DENSITY_RESIDUAL {
        return Err(Error::NoConvergence { max_terms: 200 });
    }
    Ok(w / beta)
}

/// How the κ-dependent chemical potential above the critical density is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Renormalization {
    /// μ = κv - κ^v / (β(ρ̄ - ρ_c)): the zero mode carries ρ̄ - ρ_c for every β.
    #[default]
    BetaCorrected,
    /// μ = κv - κ^v / (ρ̄ - ρ_c): the zero mode carries (ρ̄ - ρ_c)/β.
    Unscaled,
}

/// Chemical potential μ_ρ̄(κ) in (0, κv) that holds the density at ρ̄ > ρ_c.
pub fn renormalized_mu(
    v: u32,
    beta: f64,
    rho_bar: f64,
    kappa: f64,
    convention: Renormalization,
    acc: &SeriesAccuracy,
) -> Result<f64> {
    let excess = excess_density(v, beta, rho_bar, acc)?;
    if !(excess > 0.0) {
        return Err(Error::domain(format!(
            "renormalized mu needs a density above critical, got {rho_bar}"
        )));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
    }
    let scale = match convention {
        Renormalization::BetaCorrected => beta,
        Renormalization::Unscaled => 1.0,
    };
    let e0 = kappa * v as f64;
    let mu = e0 - kappa.powi(v as i32) / (scale * excess);
    if !(mu > 0.0 && mu < e0) {
        return Err(Error::range(format!(
            "renormalized mu {mu} outside (0, {e0}); kappa = {kappa} is too large for this density"
        )));
    }
    Ok(mu)
}

fn excess_density(v: u32, beta: f64, rho_bar: f64, acc: &SeriesAccuracy) -> Result<f64> {
    check_inputs(v, beta)?;
    if v == 1 {
        return Err(Error::domain(
            "no condensation in v=1: the critical density is infinite",
        ));
    }
    if !rho_bar.is_finite() {
        return Err(Error::domain(format!(
            "target density must be finite, got {rho_bar}"
        )));
    }
    Ok(rho_bar - critical_density(v, beta, acc)?)
}

/// ρ̄ - ρ_c, the κ → 0 ground-state density. Zero at the boundary.
pub fn condensate_density(v: u32, beta: f64, rho_bar: f64, acc: &SeriesAccuracy) -> Result<f64> {
    let excess = excess_density(v, beta, rho_bar, acc)?;
    if excess < 0.0 {
        return Err(Error::domain(format!(
            "density {rho_bar} is below the critical density, no condensate"
        )));
    }
    Ok(excess)
}

/// Above ρ_c the energy density stays at its μ = 0 value.
pub fn energy_density_condensed(v: u32, beta: f64, rho_bar: f64, acc: &SeriesAccuracy) -> Result<f64> {
    let excess = excess_density(v, beta, rho_bar, acc)?;
    if !(excess > 0.0) {
        return Err(Error::domain(format!(
            "density {rho_bar} is not above the critical density"
        )));
    }
    energy_density_subcritical(v, beta, 0.0, acc)
}

/// -ln(1 - e^{βμ̃}), the zero-mode part of Ω split off in the condensed expansion.
pub fn ground_state_potential(beta: f64, mu_tilde: f64) -> Result<f64> {
    if !(mu_tilde < 0.0) {
        return Err(Error::domain(format!(
            "ground-state term needs mu_tilde < 0, got {mu_tilde}"
        )));
    }
    Ok(-(-(beta * mu_tilde).exp_m1()).ln())
}

/// A regime specified either by the chemical potential or by the density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    Mu(f64),
    Density(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseReport {
    pub phase: Phase,
    /// Fixed or solved chemical potential. `None` when condensed (μ is then
    /// κ-dependent) or when the solved μ lies closer to 0 than f64 resolves.
    pub mu: Option<f64>,
    /// `None` for v = 1, where it is infinite.
    pub critical_density: Option<f64>,
}

/// μ < 0 is subcritical and μ = 0 critical. A density at or below ρ_c is
/// reached with μ ≤ 0 (ρ̄ = ρ_c exactly is critical); above it the gas condenses.
pub fn classify_phase(v: u32, beta: f64, spec: StateSpec, acc: &SeriesAccuracy) -> Result<PhaseReport> {
    check_inputs(v, beta)?;
    let rho_c = if v >= 2 {
        Some(critical_density(v, beta, acc)?)
    } else {
        None
    };
    let (phase, mu) = match spec {
        StateSpec::Mu(mu) if mu < 0.0 => (Phase::Subcritical, mu),
        StateSpec::Mu(mu) if mu == 0.0 => (Phase::Critical, 0.0),
        StateSpec::Mu(mu) => {
            return Err(Error::domain(format!(
                "a fixed mu must be <= 0 in the limit kappa -> 0, got {mu}"
            )))
        }
        StateSpec::Density(rho) => {
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(Error::domain(format!(
                    "target density must be positive, got {rho}"
                )));
            }
            match rho_c {
                Some(rc) if rho > rc => {
                    return Ok(PhaseReport {
                        phase: Phase::Condensed { target_density: rho },
                        mu: None,
                        critical_density: rho_c,
                    })
                }
                Some(rc) if rho == rc => (Phase::Critical, 0.0),
                _ => match solve_mu_for_density(v, beta, rho, acc) {
                    Ok(mu) => (Phase::Subcritical, mu),
                    Err(Error::Range(_)) => {
                        return Ok(PhaseReport {
                            phase: Phase::Subcritical,
                            mu: None,
                            critical_density: rho_c,
                        })
                    }
                    Err(e) => return Err(e),
                },
            }
        }
    };
    Ok(PhaseReport {
        phase,
        mu: Some(mu),
        critical_density: rho_c,
    })
}

/// Oracle densities at a finite trap, all scaled by κ^v.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityReport {
    pub particle_density: f64,
    pub energy_density: f64,
    pub ground_state_density: f64,
    pub phase: Phase,
}

pub fn density_report(p: &TrapParams, phase: Phase, acc: &SeriesAccuracy) -> Result<DensityReport> {
    let volume = p.kappa().powi(p.v() as i32);
    Ok(DensityReport {
        particle_density: volume * particle_number_oracle(p, acc)?.value,
        energy_density: volume * energy_oracle(p, acc)?.value,
        ground_state_density: ground_state_density_oracle(p),
        phase,
    })
}
