//! Flag and environment handling. Every default lives here; the library
//! defaults are pulled in rather than restated.

use crate::CliError;
use bose_zeta::expansion::DEFAULT_KAPPA_GRID;
use bose_zeta::specfun::SeriesAccuracy;
use clap::{Args, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Number of oscillator dimensions.
    #[arg(long = "v", env = "BOSEZETA_V")]
    pub v: u32,

    /// Inverse temperature.
    #[arg(long, env = "BOSEZETA_BETA", default_value_t = 1.0)]
    pub beta: f64,

    /// Fixed chemical potential (must be <= 0).
    #[arg(
        long,
        env = "BOSEZETA_MU",
        allow_negative_numbers = true,
        conflicts_with = "rho",
        required_unless_present = "rho"
    )]
    pub mu: Option<f64>,

    /// Target density; the chemical potential is solved or renormalized.
    #[arg(long, env = "BOSEZETA_RHO", allow_negative_numbers = true)]
    pub rho: Option<f64>,

    #[command(flatten)]
    pub accuracy: AccuracyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AccuracyArgs {
    /// Absolute truncation tolerance for every series.
    #[arg(long, env = "BOSEZETA_TOL")]
    pub tol: Option<f64>,

    /// Hard cap on terms per series.
    #[arg(long, env = "BOSEZETA_MAX_TERMS")]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Trap parameters, strictly descending, comma separated.
    #[arg(long, env = "BOSEZETA_KAPPA_GRID", value_delimiter = ',')]
    pub kappa_grid: Option<Vec<f64>>,

    /// Worker threads for the sweep (default: one per core).
    #[arg(long, env = "BOSEZETA_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, env = "BOSEZETA_FORMAT", default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, env = "BOSEZETA_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum State {
    Mu(f64),
    Rho(f64),
}

/// Validated inputs shared by `expand`, `sweep` and `compare`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub v: u32,
    pub beta: f64,
    pub state: State,
    pub kappa_grid: Vec<f64>,
    pub accuracy: SeriesAccuracy,
    pub workers: Option<usize>,
}

/// The part of a run that determines its output; written into every file.
#[derive(Debug, Serialize)]
pub struct ConfigEcho<'a> {
    pub v: u32,
    pub beta: f64,
    pub state: State,
    pub kappa_grid: &'a [f64],
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl RunConfig {
    pub fn from_args(state: &StateArgs, grid: Option<&GridArgs>) -> Result<Self, CliError> {
        let v = check_dimension(state.v)?;
        let beta = check_beta(state.beta)?;
        let state_spec = match (state.mu, state.rho) {
            (Some(mu), None) => {
                if !mu.is_finite() || mu > 0.0 {
                    return Err(CliError::Config(format!(
                        "--mu must be finite and <= 0 (got {mu}); use --rho for densities above critical"
                    )));
                }
                State::Mu(mu)
            }
            (None, Some(rho)) => State::Rho(check_density(rho)?),
            _ => {
                return Err(CliError::Config(
                    "exactly one of --mu and --rho is required".into(),
                ))
            }
        };
        let kappa_grid = match grid.and_then(|g| g.kappa_grid.clone()) {
            Some(g) => g,
            None => DEFAULT_KAPPA_GRID.to_vec(),
        };
        check_grid(&kappa_grid)?;
        let workers = match grid.and_then(|g| g.workers) {
            Some(0) => return Err(CliError::Config("--workers must be at least 1".into())),
            w => w,
        };
        Ok(RunConfig {
            v,
            beta,
            state: state_spec,
            kappa_grid,
            accuracy: accuracy(&state.accuracy)?,
            workers,
        })
    }

    pub fn echo(&self) -> ConfigEcho<'_> {
        ConfigEcho {
            v: self.v,
            beta: self.beta,
            state: self.state,
            kappa_grid: &self.kappa_grid,
            abs_tol: self.accuracy.abs_tol,
            max_terms: self.accuracy.max_terms,
        }
    }
}

pub fn accuracy(args: &AccuracyArgs) -> Result<SeriesAccuracy, CliError> {
    let default = SeriesAccuracy::default();
    SeriesAccuracy::new(
        args.tol.unwrap_or(default.abs_tol),
        args.max_terms.unwrap_or(default.max_terms),
    )
    .map_err(|e| CliError::Config(format!("invalid tolerances: {e}")))
}

pub fn check_dimension(v: u32) -> Result<u32, CliError> {
    if v == 0 {
        return Err(CliError::Config("--v must be a positive integer".into()));
    }
    Ok(v)
}

pub fn check_beta(beta: f64) -> Result<f64, CliError> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(CliError::Config(format!(
            "--beta must be positive and finite, got {beta}"
        )));
    }
    Ok(beta)
}

pub fn check_density(rho: f64) -> Result<f64, CliError> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(CliError::Config(format!(
            "--rho must be positive and finite, got {rho}"
        )));
    }
    Ok(rho)
}

pub fn check_grid(grid: &[f64]) -> Result<(), CliError> {
    if grid.is_empty() {
        return Err(CliError::Config("--kappa-grid is empty".into()));
    }
    if let Some(k) = grid.iter().find(|k| !(**k > 0.0) || !k.is_finite()) {
        return Err(CliError::Config(format!(
            "--kappa-grid entries must be positive, got {k}"
        )));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::Config(
            "--kappa-grid must be strictly descending".into(),
        ));
    }
    Ok(())
}
