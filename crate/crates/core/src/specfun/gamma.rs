use super::as_integer;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Euler Γ. Exact factorials at positive integers, poles at non-positive
/// integers.
pub fn gamma_fn(s: f64) -> Result<f64> {
    match as_integer(s) {
        Some(k) if k <= 0 => Err(Error::Pole {
            function: "gamma",
            at: s,
        }),
        Some(k) if k <= 171 => Ok(factorial(k as u32 - 1)),
        _ => Ok(statrs::function::gamma::gamma(s)),
    }
}

pub fn ln_gamma(s: f64) -> f64 {
    statrs::function::gamma::ln_gamma(s)
}

/// ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> f64 {
    match as_integer(x) {
        Some(k) if (1..=1000).contains(&k) => harmonic_number(k as u32 - 1) - EULER_GAMMA,
        _ => statrs::function::gamma::digamma(x),
    }
}

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
pub fn harmonic_number(n: u32) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
