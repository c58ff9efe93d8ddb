use crate::config::{RunConfig, State};
use crate::CliError;
use bose_zeta::expansion::{
    coeffs_condensed, coeffs_critical, coeffs_renormalized, coeffs_subcritical, evaluate, fit_remainder,
    AsymptoticExpansion, Phase, RemainderFit,
};
use bose_zeta::spectrum::{grand_potential_oracle, TrapParams};
use bose_zeta::thermo::{
    classify_phase, density_report, ground_state_potential, renormalized_mu, PhaseReport, Renormalization,
    StateSpec,
};
use rayon::prelude::*;
use serde::Serialize;

/// How the chemical potential is chosen at each κ of a sweep.
#[derive(Debug, Clone)]
pub enum Plan {
    /// κ-independent μ ≤ 0 and a single expansion for the whole grid.
    Fixed {
        mu: f64,
        phase: Phase,
        expansion: AsymptoticExpansion,
    },
    /// Above ρ_c: μ renormalized per κ, zero mode split off.
    Condensed { rho: f64 },
}

pub fn classify(cfg: &RunConfig) -> Result<PhaseReport, CliError> {
    let spec = match cfg.state {
        State::Mu(mu) => StateSpec::Mu(mu),
        State::Rho(rho) => {
            if cfg.v == 1 {
                return Err(CliError::Config(
                    "no condensation in v=1: the critical density is infinite; specify --mu instead".into(),
                ));
            }
            StateSpec::Density(rho)
        }
    };
    Ok(classify_phase(cfg.v, cfg.beta, spec, &cfg.accuracy)?)
}

fn fixed_mu(report: &PhaseReport) -> Result<f64, CliError> {
    report.mu.ok_or_else(|| {
        CliError::Numerical("the solved chemical potential is closer to 0 than f64 resolves".into())
    })
}

pub fn plan(cfg: &RunConfig, report: &PhaseReport) -> Result<Plan, CliError> {
    let acc = &cfg.accuracy;
    Ok(match report.phase {
        Phase::Condensed { target_density } => Plan::Condensed { rho: target_density },
        Phase::Critical => Plan::Fixed {
            mu: 0.0,
            phase: report.phase,
            expansion: coeffs_critical(cfg.v, cfg.beta, acc)?,
        },
        Phase::Subcritical => {
            let mu = fixed_mu(report)?;
            Plan::Fixed {
                mu,
                phase: report.phase,
                expansion: coeffs_subcritical(cfg.v, cfg.beta, mu, acc)?,
            }
        }
    })
}

/// The κ → 0 expansion for `expand`; above ρ_c this is the renormalized limit.
pub fn limit_expansion(cfg: &RunConfig, report: &PhaseReport) -> Result<AsymptoticExpansion, CliError> {
    match plan(cfg, report)? {
        Plan::Fixed { expansion, .. } => Ok(expansion),
        Plan::Condensed { .. } => Ok(coeffs_renormalized(cfg.v, cfg.beta, &cfg.accuracy)?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub kappa: f64,
    pub omega_oracle: f64,
    pub omega_expansion: f64,
    pub abs_error: f64,
    pub particle_density: f64,
    pub ground_state_density: f64,
    pub energy_density: f64,
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub kappa: f64,
    pub outcome: Result<(SweepRecord, f64), String>,
}

impl SweepPoint {
    pub fn record(&self) -> Option<&SweepRecord> {
        self.outcome.as_ref().ok().map(|(r, _)| r)
    }
}

fn point(cfg: &RunConfig, plan: &Plan, kappa: f64) -> bose_zeta::Result<(SweepRecord, f64)> {
    let acc = &cfg.accuracy;
    let (p, phase, expansion_value, singular, zero_mode) = match plan {
        Plan::Fixed { mu, phase, expansion } => {
            let p = TrapParams::new(cfg.v, cfg.beta, kappa, *mu)?;
            (
                p,
                *phase,
                evaluate(expansion, kappa)?,
                expansion.singular_part(kappa),
                0.0,
            )
        }
        Plan::Condensed { rho } => {
            let mu = renormalized_mu(cfg.v, cfg.beta, *rho, kappa, Renormalization::BetaCorrected, acc)?;
            let p = TrapParams::new(cfg.v, cfg.beta, kappa, mu)?;
            let mu_tilde = mu - p.ground_energy();
            let expansion = coeffs_condensed(cfg.v, cfg.beta, mu_tilde, kappa, acc)?;
            let zero_mode = ground_state_potential(cfg.beta, mu_tilde)?;
            let phase = Phase::Condensed { target_density: *rho };
            let value = evaluate(&expansion, kappa)? + zero_mode;
            (p, phase, value, expansion.singular_part(kappa), zero_mode)
        }
    };
    let omega_oracle = grand_potential_oracle(&p, acc)?.value;
    let densities = density_report(&p, phase, acc)?;
    let record = SweepRecord {
        kappa,
        omega_oracle,
        omega_expansion: expansion_value,
        abs_error: (omega_oracle - expansion_value).abs(),
        particle_density: densities.particle_density,
        ground_state_density: densities.ground_state_density,
        energy_density: densities.energy_density,
    };
    let fields = [
        record.omega_oracle,
        record.omega_expansion,
        record.particle_density,
        record.ground_state_density,
        record.energy_density,
    ];
    if fields.iter().any(|x| !x.is_finite()) {
        return Err(bose_zeta::Error::Range(format!(
            "non-finite observable at kappa = {kappa}"
        )));
    }
    Ok((record, omega_oracle - zero_mode - singular))
}

/// Evaluates every grid point; results come back in grid order whatever the
/// worker count.
pub fn sweep(cfg: &RunConfig, plan: &Plan) -> Result<Vec<SweepPoint>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {} workers: {e}", cfg.workers.unwrap_or(0))))?;
    Ok(pool.install(|| {
        cfg.kappa_grid
            .par_iter()
            .map(|&kappa| SweepPoint {
                kappa,
                outcome: point(cfg, plan, kappa).map_err(|e| e.to_string()),
            })
            .collect()
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    pub failed: usize,
    pub max_abs_error: Option<f64>,
    /// Successive abs_error ratios between neighbouring grid points.
    pub error_ratios: Vec<f64>,
    pub fit: Option<RemainderFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_unavailable: Option<String>,
}

pub fn summarize(points: &[SweepPoint]) -> SweepSummary {
    let ok: Vec<&(SweepRecord, f64)> = points.iter().filter_map(|p| p.outcome.as_ref().ok()).collect();
    let max_abs_error = ok.iter().map(|(r, _)| r.abs_error).reduce(f64::max);
    let error_ratios = ok
        .windows(2)
        .map(|w| w[0].0.abs_error / w[1].0.abs_error)
        .collect();
    let kappas: Vec<f64> = ok.iter().map(|(r, _)| r.kappa).collect();
    let remainders: Vec<f64> = ok.iter().map(|(_, rem)| *rem).collect();
    let (fit, fit_unavailable) = if ok.len() < points.len() {
        (None, Some("some grid points failed".to_string()))
    } else {
        match fit_remainder(&kappas, &remainders) {
            Ok(f) => (Some(f), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    SweepSummary {
        points: points.len(),
        failed: points.len() - ok.len(),
        max_abs_error,
        error_ratios,
        fit,
        fit_unavailable,
    }
}
