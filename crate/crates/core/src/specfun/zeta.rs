//! Riemann and Hurwitz ζ on the real axis.
//!
//! Both are computed from the Euler-Maclaurin formula
//!
//! ```text
//! ζ(s, a) = Σ_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//!         + Σ_{k=1}^{p} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · (N+a)^{-s-2k+1}
//! ```
//!
//! which continues analytically to every real `s ≠ 1`. Non-positive integer
//! arguments use the closed Bernoulli-polynomial values instead.

use super::bernoulli::{bernoulli_number_f64, bernoulli_poly};
use super::gamma::gamma_fn;
use super::{as_integer, SeriesAccuracy};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Number of Bernoulli correction terms.
const EM_ORDER: usize = 8;

/// Riemann ζ(s) for real `s ≠ 1`.
pub fn riemann_zeta(s: f64, acc: &SeriesAccuracy) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole {
            function: "riemann_zeta",
            at: 1.0,
        });
    }
    if let Some(k) = as_integer(s) {
        if k <= 0 {
            // ζ(-m) = (-1)^m B_{m+1}/(m+1)
            let m = (-k) as usize;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            return Ok(sign * bernoulli_number_f64(m + 1) / (m + 1) as f64);
        }
    }
    if s < 0.0 {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let reflected = euler_maclaurin(1.0 - s, 1.0, acc)?;
        return Ok(2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma_fn(1.0 - s)? * reflected);
    }
    euler_maclaurin(s, 1.0, acc)
}

/// Hurwitz ζ(s, a) = Σ_{n≥0} (n+a)^{-s} and its continuation, for `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64, acc: &SeriesAccuracy) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("hurwitz_zeta needs a > 0, got {a}")));
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: 1.0,
        });
    }
    if let Some(k) = as_integer(s) {
        if k <= 0 {
            // ζ(-m, a) = -B_{m+1}(a)/(m+1)
            let m = (-k) as usize;
            return Ok(-bernoulli_poly(m + 1, a) / (m + 1) as f64);
        }
    }
    euler_maclaurin(s, a, acc)
}

/// ∂ζ(s, a)/∂s for `a > 0`, `s ≠ 1`.
pub fn hurwitz_zeta_deriv(s: f64, a: f64, acc: &SeriesAccuracy) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("hurwitz_zeta_deriv needs a > 0, got {a}")));
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: "hurwitz_zeta_deriv",
            at: 1.0,
        });
    }
    euler_maclaurin_deriv(s, a, acc)
}

pub fn riemann_zeta_deriv(s: f64, acc: &SeriesAccuracy) -> Result<f64> {
    hurwitz_zeta_deriv(s, 1.0, acc)
}

fn initial_cutoff(s: f64) -> usize {
    12 + s.abs().ceil() as usize
}

/// Coefficient B_{2k}/(2k)! for k = 1..=EM_ORDER+1.
fn em_weight(k: usize) -> f64 {
    bernoulli_number_f64(2 * k) / super::gamma::factorial(2 * k as u32)
}

/// Rising factorial s(s+1)…(s+n-1) together with its derivative in s.
fn rising_with_deriv(s: f64, n: usize) -> (f64, f64) {
    let mut p = 1.0;
    let mut dp = 0.0;
    for i in 0..n {
        let f = s + i as f64;
        dp = dp * f + p;
        p *= f;
    }
    (p, dp)
}

fn choose_cutoff(s: f64, a: f64, acc: &SeriesAccuracy, with_log: bool) -> Result<usize> {
    let tol = acc.abs_tol * 1e-3;
    let mut n = initial_cutoff(s);
    loop {
        let x = n as f64 + a;
        let (p, dp) = rising_with_deriv(s, 2 * EM_ORDER + 1);
        let scale = if with_log {
            dp.abs() + p.abs() * x.ln()
        } else {
            p.abs()
        };
        let bound = em_weight(EM_ORDER + 1).abs() * scale * x.powf(-s - (2 * EM_ORDER + 1) as f64);
        if bound <= tol || bound == 0.0 {
            return Ok(n);
        }
        if n >= acc.max_terms {
            return Err(Error::NoConvergence {
                max_terms: acc.max_terms,
            });
        }
        n = (n * 2).min(acc.max_terms);
    }
}

fn euler_maclaurin(s: f64, a: f64, acc: &SeriesAccuracy) -> Result<f64> {
    let n = choose_cutoff(s, a, acc, false)?;
    let x = n as f64 + a;
    let head: f64 = (0..n).rev().map(|k| (k as f64 + a).powf(-s)).sum();
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    for k in 1..=EM_ORDER {
        let (p, _) = rising_with_deriv(s, 2 * k - 1);
        tail += em_weight(k) * p * x.powf(-s - (2 * k - 1) as f64);
    }
    Ok(head + tail)
}

fn euler_maclaurin_deriv(s: f64, a: f64, acc: &SeriesAccuracy) -> Result<f64> {
    let n = choose_cutoff(s, a, acc, true)?;
    let x = n as f64 + a;
    let lx = x.ln();
    let head: f64 = (0..n)
        .rev()
        .map(|k| {
            let y = k as f64 + a;
            -y.ln() * y.powf(-s)
        })
        .sum();
    let sm1 = s - 1.0;
    let mut tail = x.powf(1.0 - s) * (-lx / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * lx * x.powf(-s);
    for k in 1..=EM_ORDER {
        let (p, dp) = rising_with_deriv(s, 2 * k - 1);
        tail += em_weight(k) * x.powf(-s - (2 * k - 1) as f64) * (dp - lx * p);
    }
    Ok(head + tail)
}
