//! Barnes ζ-function of a `v`-fold equally spaced spectrum,
//!
//! ```text
//! ζ_B^{(v)}(s, c | r) = Σ_{n ∈ ℕ₀^v} [c + r(n_1 + … + n_v)]^{-s},
//! ```
//!
//! with the zero multi-index omitted when `c = 0`.
//!
//! Two independent routes are provided. The Bernoulli route evaluates the
//! residues and the value at zero from generalized Bernoulli polynomials. The
//! decomposition route expands the degeneracy C(n+v-1, v-1) as a polynomial
//! Σ_j c_j (n + c/r)^j, which writes ζ_B as a finite combination of Hurwitz ζ
//! values and so continues it to every `s`.

use super::bernoulli::gen_bernoulli_poly;
use super::gamma::{digamma, factorial};
use super::zeta::{hurwitz_zeta, hurwitz_zeta_deriv};
use super::SeriesAccuracy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BarnesParams {
    v: u32,
    c: f64,
    r: f64,
}

impl BarnesParams {
    pub fn new(v: u32, c: f64, r: f64) -> Result<Self> {
        if v == 0 {
            return Err(Error::domain("Barnes dimension v must be at least 1"));
        }
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::domain(format!(
                "Barnes offset c must be non-negative, got {c}"
            )));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!(
                "Barnes spacing r must be positive, got {r}"
            )));
        }
        Ok(BarnesParams { v, c, r })
    }

    /// Parameters of the trap spectrum E_n = κ(2n + v): offset `v`, spacing 2.
    pub fn trap(v: u32) -> Result<Self> {
        Self::new(v, v as f64, 2.0)
    }

    /// The ground-state-shifted trap spectrum: offset 0, spacing 2.
    pub fn shifted_trap(v: u32) -> Result<Self> {
        Self::new(v, 0.0, 2.0)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    fn offset(&self) -> f64 {
        self.c / self.r
    }

    /// Second argument of the Hurwitz functions in the decomposition.
    fn hurwitz_shift(&self) -> f64 {
        if self.c == 0.0 {
            1.0
        } else {
            self.offset()
        }
    }
}

/// Coefficients c_j (j = 0..v-1) with C(n+v-1, v-1) = Σ_j c_j (n + a)^j.
pub fn degeneracy_poly_coeffs(v: u32, a: f64) -> Vec<f64> {
    // Π_{i=1}^{v-1} (x - a + i) / (v-1)!
    let mut poly = vec![1.0];
    for i in 1..v {
        let root_shift = i as f64 - a;
        let mut next = vec![0.0; poly.len() + 1];
        for (j, &p) in poly.iter().enumerate() {
            next[j + 1] += p;
            next[j] += p * root_shift;
        }
        poly = next;
    }
    let norm = factorial(v - 1);
    poly.iter().map(|p| p / norm).collect()
}

fn check_pole_index(k: u32, p: &BarnesParams) -> Result<()> {
    if k < 1 || k > p.v {
        Err(Error::range(format!(
            "Barnes zeta poles lie at s = 1..={}, got k = {k}",
            p.v
        )))
    } else {
        Ok(())
    }
}

/// Res_{s=k} ζ_B^{(v)}(s, c|r) = (-1)^{v+k} / ((k-1)!(v-k)!) · r^{-v} · B^{(v)}_{v-k}(c, r).
pub fn barnes_zeta_residue(k: u32, p: &BarnesParams) -> Result<f64> {
    check_pole_index(k, p)?;
    let v = p.v;
    let sign = if (v + k) % 2 == 0 { 1.0 } else { -1.0 };
    let b = gen_bernoulli_poly((v - k) as usize, v, p.c, p.r);
    Ok(sign / (factorial(k - 1) * factorial(v - k)) * p.r.powi(-(v as i32)) * b)
}

/// Residue at s = k read off the Hurwitz decomposition: r^{-k} c_{k-1}.
pub fn barnes_zeta_residue_decomposed(k: u32, p: &BarnesParams) -> Result<f64> {
    check_pole_index(k, p)?;
    let coeffs = degeneracy_poly_coeffs(p.v, p.offset());
    Ok(p.r.powi(-(k as i32)) * coeffs[(k - 1) as usize])
}

/// ζ_B^{(v)}(0, c|r).
///
/// For `c > 0` this is (-1)^v / v! · r^{-v} · B_v^{(v)}(c, r). At `c = 0` the
/// zero mode is excluded from the sum and the value is taken from the
/// decomposition Σ_j c_j ζ_R(-j).
pub fn barnes_zeta_at_zero(p: &BarnesParams) -> Result<f64> {
    if p.c == 0.0 {
        return barnes_zeta_decomposed(0.0, p, &SeriesAccuracy::default());
    }
    let v = p.v;
    let sign = if v % 2 == 0 { 1.0 } else { -1.0 };
    let b = gen_bernoulli_poly(v as usize, v, p.c, p.r);
    Ok(sign / factorial(v) * p.r.powi(-(v as i32)) * b)
}

/// ζ_B^{(v)}(s, c|r) at any non-pole `s`, via r^{-s} Σ_j c_j ζ_H(s-j, c/r).
pub fn barnes_zeta_decomposed(s: f64, p: &BarnesParams, acc: &SeriesAccuracy) -> Result<f64> {
    let coeffs = degeneracy_poly_coeffs(p.v, p.offset());
    let shift = p.hurwitz_shift();
    let mut sum = 0.0;
    for (j, &cj) in coeffs.iter().enumerate() {
        if cj != 0.0 {
            sum += cj * hurwitz_zeta(s - j as f64, shift, acc)?;
        }
    }
    Ok(p.r.powf(-s) * sum)
}

/// ∂_s ζ_B^{(v)}(s, c|r) via the decomposition.
pub fn barnes_zeta_deriv_decomposed(s: f64, p: &BarnesParams, acc: &SeriesAccuracy) -> Result<f64> {
    let coeffs = degeneracy_poly_coeffs(p.v, p.offset());
    let shift = p.hurwitz_shift();
    let mut sum = 0.0;
    for (j, &cj) in coeffs.iter().enumerate() {
        if cj != 0.0 {
            sum += cj * hurwitz_zeta_deriv(s - j as f64, shift, acc)?;
        }
    }
    let value = barnes_zeta_decomposed(s, p, acc)?;
    Ok(p.r.powf(-s) * sum - p.r.ln() * value)
}

/// Leading Laurent data of ζ_B at a pole: ζ_B(k + u) = residue/u + finite + O(u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarnesLaurent {
    pub residue: f64,
    pub finite: f64,
}

pub fn barnes_zeta_laurent(k: u32, p: &BarnesParams, acc: &SeriesAccuracy) -> Result<BarnesLaurent> {
    check_pole_index(k, p)?;
    let coeffs = degeneracy_poly_coeffs(p.v, p.offset());
    let shift = p.hurwitz_shift();
    let rk = p.r.powi(-(k as i32));
    let pole_j = (k - 1) as usize;
    // ζ_H(1 + u, a) = 1/u - ψ(a) + O(u)
    let mut finite = coeffs[pole_j] * (-digamma(shift) - p.r.ln());
    for (j, &cj) in coeffs.iter().enumerate() {
        if j != pole_j && cj != 0.0 {
            finite += cj * hurwitz_zeta(k as f64 - j as f64, shift, acc)?;
        }
    }
    Ok(BarnesLaurent {
        residue: rk * coeffs[pole_j],
        finite: rk * finite,
    })
}

/// The defining sum for `s > v`: a direct head over total quantum number n
/// weighted by C(n+v-1, v-1), closed by a Hurwitz tail from n = N on.
pub fn barnes_zeta_value(s: f64, p: &BarnesParams, acc: &SeriesAccuracy) -> Result<f64> {
    if !(s > p.v as f64) {
        return Err(Error::divergence(format!(
            "Barnes zeta sum diverges for s <= v = {}, got s = {s}",
            p.v
        )));
    }
    let a = p.offset();
    let start = if p.c == 0.0 { 1 } else { 0 };
    let head_len = 64usize.min(acc.max_terms);
    let mut head = 0.0;
    let mut degeneracy = 1.0; // C(n+v-1, v-1) at n = 0
    for n in 0..head_len {
        if n > 0 {
            degeneracy = degeneracy * (n + p.v as usize - 1) as f64 / n as f64;
        }
        if n >= start {
            head += degeneracy * (n as f64 + a).powf(-s);
        }
    }
    let tail_offset = head_len as f64 + a;
    let coeffs = degeneracy_poly_coeffs(p.v, a);
    let mut tail = 0.0;
    for (j, &cj) in coeffs.iter().enumerate() {
        if cj != 0.0 {
            tail += cj * hurwitz_zeta(s - j as f64, tail_offset, acc)?;
        }
    }
    Ok(p.r.powf(-s) * (head + tail))
}
