//! Harmonic-trap spectrum and brute-force level sums.
//!
//! The isotropic oscillator in `v` dimensions has levels `E_n = 2κ(n + v/2)`
//! with degeneracy `C(n+v-1, v-1)`. Every oracle here sums over `n` in
//! ascending order with compensated summation and stops only once a
//! geometric majorant of the remaining tail is below `abs_tol`, so the
//! reported bound is rigorous and results are bit-stable.

use crate::error::{Error, Result};
use crate::specfun::SeriesAccuracy;
use serde::Serialize;

/// Parameters of the trapped ideal Bose gas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapParams {
    v: u32,
    beta: f64,
    kappa: f64,
    mu: f64,
}

impl TrapParams {
    /// Validates `β > 0`, `κ > 0` and `μ < κv`. `μ = -∞` is accepted as the
    /// empty-gas limit.
    pub fn new(v: u32, beta: f64, kappa: f64, mu: f64) -> Result<Self> {
        if v == 0 {
            return Err(Error::domain("dimension v must be at least 1"));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain(format!("beta must be positive, got {beta}")));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
        }
        let e0 = kappa * v as f64;
        if mu.is_nan() || mu >= e0 {
            return Err(Error::domain(format!(
                "mu must lie below the ground-state energy {e0}, got {mu}"
            )));
        }
        Ok(TrapParams { v, beta, kappa, mu })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn fugacity(&self) -> f64 {
        (self.beta * self.mu).exp()
    }

    /// Zero-point energy `E_0 = κv`.
    pub fn ground_energy(&self) -> f64 {
        self.kappa * self.v as f64
    }

    /// Same trap with a different chemical potential.
    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        TrapParams::new(self.v, self.beta, self.kappa, mu)
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        TrapParams::new(self.v, beta, self.kappa, self.mu)
    }

    pub fn with_kappa(&self, kappa: f64) -> Result<Self> {
        TrapParams::new(self.v, self.beta, kappa, self.mu)
    }
}

/// A truncated level sum together with a bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    pub value: f64,
    pub truncation_bound: f64,
    pub levels_used: usize,
}

pub fn energy_level(n: u64, p: &TrapParams) -> f64 {
    2.0 * p.kappa * (n as f64 + p.v as f64 / 2.0)
}

/// Number of multi-indices `(n_1, …, n_v)` with `n_1 + … + n_v = n`.
///
/// Panics if the result does not fit in `u128`.
pub fn degeneracy(n: u64, v: u32) -> u128 {
    // C(n+v-1, v-1) built up as a product of exact partial binomials
    let mut d: u128 = 1;
    for j in 1..v as u128 {
        d = d.checked_mul(n as u128 + j).expect("degeneracy overflows u128") / j;
    }
    d
}

fn degeneracy_f64(n: u64, v: u32) -> f64 {
    let mut d = 1.0;
    for j in 1..v {
        d *= (n as f64 + j as f64) / j as f64;
    }
    d
}

/// Ω = Σ_n d(n) · (-ln(1 - e^{-β(E_n - μ)})), the logarithm of the grand
/// partition sum.
pub fn grand_potential_oracle(p: &TrapParams, acc: &SeriesAccuracy) -> Result<OracleResult> {
    level_sum(p, acc, Observable::GrandPotential)
}

/// N = Σ_n d(n) / (e^{β(E_n - μ)} - 1).
pub fn particle_number_oracle(p: &TrapParams, acc: &SeriesAccuracy) -> Result<OracleResult> {
    level_sum(p, acc, Observable::ParticleNumber)
}

/// ⟨H⟩ = Σ_n d(n) E_n / (e^{β(E_n - μ)} - 1).
///
/// This is `-∂_β Ω` at fixed `βμ`. At fixed `μ` the same derivative gives
/// `⟨H⟩ - μN`.
pub fn energy_oracle(p: &TrapParams, acc: &SeriesAccuracy) -> Result<OracleResult> {
    level_sum(p, acc, Observable::Energy)
}

/// κ^v times the Bose occupation of the lowest level.
pub fn ground_state_density_oracle(p: &TrapParams) -> f64 {
    let x = p.beta * (p.ground_energy() - p.mu);
    p.kappa.powi(p.v as i32) / x.exp_m1()
}

#[derive(Debug, Clone, Copy)]
enum Observable {
    GrandPotential,
    ParticleNumber,
    Energy,
}

impl Observable {
    /// Per-state contribution at `x = β(E - μ) > 0`.
    fn per_state(self, x: f64, energy: f64) -> f64 {
        match self {
            Observable::GrandPotential => {
                if x > 0.7 {
                    -(-(-x).exp()).ln_1p()
                } else {
                    -(-(-x).exp_m1()).ln()
                }
            }
            Observable::ParticleNumber => 1.0 / x.exp_m1(),
            Observable::Energy => energy / x.exp_m1(),
        }
    }
}

fn level_sum(p: &TrapParams, acc: &SeriesAccuracy, obs: Observable) -> Result<OracleResult> {
    let beta = p.beta;
    let v = p.v as f64;
    let step = (-2.0 * beta * p.kappa).exp();
    // For x ≥ 1 each of the three per-state functions is below e^{-x}/(1 - e^{-1}).
    let majorant_scale = 1.0 / (1.0 - (-1.0f64).exp());
    let mut sum = NeumaierSum::default();
    let mut n: u64 = 0;
    loop {
        if n as usize >= acc.max_terms {
            return Err(Error::NoConvergence {
                max_terms: acc.max_terms,
            });
        }
        let e = energy_level(n, p);
        let x = beta * (e - p.mu);
        let d = degeneracy_f64(n, p.v);
        sum.add(d * obs.per_state(x, e));

        let m = n + 1;
        let e_next = energy_level(m, p);
        let x_next = beta * (e_next - p.mu);
        if x_next >= 1.0 {
            let mf = m as f64;
            let mut ratio = step * (mf + v) / (mf + 1.0);
            let mut first = degeneracy_f64(m, p.v) * (-x_next).exp() * majorant_scale;
            if let Observable::Energy = obs {
                ratio *= (mf + 1.0 + v / 2.0) / (mf + v / 2.0);
                first *= e_next;
            }
            if ratio < 1.0 {
                let bound = 2.0 * first / (1.0 - ratio);
                if bound < acc.abs_tol {
                    return Ok(OracleResult {
                        value: sum.total(),
                        truncation_bound: bound,
                        levels_used: m as usize,
                    });
                }
            }
        }
        n = m;
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
