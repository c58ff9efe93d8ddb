use super::gamma::{gamma_fn, harmonic_number};
use super::zeta::riemann_zeta;
use super::{as_integer, SeriesAccuracy};
use crate::error::{Error, Result};

/// Real polylogarithm Li_s(z) = Σ_{N≥1} z^N / N^s for `z ∈ [-1, 1]`.
///
/// For `z` near 1 prefer [`polylog_exp`], which takes `ln z` directly and
/// keeps full precision as `z → 1`.
pub fn polylog(order: f64, z: f64, acc: &SeriesAccuracy) -> Result<f64> {
    if !z.is_finite() || z.abs() > 1.0 {
        return Err(Error::domain(format!(
            "polylog argument must lie in [-1, 1], got {z}"
        )));
    }
    if z == 1.0 {
        return at_one(order, acc);
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == -1.0 {
        // Li_s(-1) = -(1 - 2^{1-s}) ζ(s)
        if order == 1.0 {
            return Ok(-std::f64::consts::LN_2);
        }
        return Ok(-(1.0 - 2f64.powf(1.0 - order)) * riemann_zeta(order, acc)?);
    }
    if z.abs() <= 0.5 {
        return direct_sum(order, z, acc);
    }
    if z > 0.0 {
        return log_series(order, z.ln(), acc);
    }
    // Li_s(z) + Li_s(-z) = 2^{1-s} Li_s(z²)
    let x = -z;
    Ok(2f64.powf(1.0 - order) * log_series(order, 2.0 * x.ln(), acc)? - log_series(order, x.ln(), acc)?)
}

/// Li_s(e^w) for `w ≤ 0`.
pub fn polylog_exp(order: f64, w: f64, acc: &SeriesAccuracy) -> Result<f64> {
    if !(w <= 0.0) {
        return Err(Error::domain(format!("polylog_exp needs w <= 0, got {w}")));
    }
    if w == 0.0 {
        return at_one(order, acc);
    }
    if w == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if w < -std::f64::consts::LN_2 {
        return direct_sum(order, w.exp(), acc);
    }
    log_series(order, w, acc)
}

fn at_one(order: f64, acc: &SeriesAccuracy) -> Result<f64> {
    if order > 1.0 {
        riemann_zeta(order, acc)
    } else {
        Err(Error::divergence(format!(
            "Li_{order}(1) diverges for order <= 1"
        )))
    }
}

fn direct_sum(order: f64, z: f64, acc: &SeriesAccuracy) -> Result<f64> {
    let tol = acc.abs_tol * 1e-4;
    let az = z.abs();
    let mut sum = 0.0;
    let mut zn = 1.0;
    for n in 1..=acc.max_terms {
        zn *= z;
        let nf = n as f64;
        let term = zn * nf.powf(-order);
        sum += term;
        // ratio of consecutive magnitudes, non-increasing in n from here on
        let ratio = az * ((nf + 1.0) / nf).powf(-order);
        if ratio < 1.0 {
            let tail = term.abs() * ratio / (1.0 - ratio);
            if tail <= tol || zn == 0.0 {
                return Ok(sum);
            }
        }
    }
    Err(Error::NoConvergence {
        max_terms: acc.max_terms,
    })
}

/// Expansion around z = 1 in powers of w = ln z, convergent for |w| < 2π.
fn log_series(order: f64, w: f64, acc: &SeriesAccuracy) -> Result<f64> {
    let tol = acc.abs_tol * 1e-4;
    let positive_int = as_integer(order).filter(|&n| n >= 1);
    let mut sum = match positive_int {
        Some(n) => {
            let m = (n - 1) as i32;
            let fact = gamma_fn(n as f64)?;
            w.powi(m) / fact * (harmonic_number(m as u32) - (-w).ln())
        }
        None => gamma_fn(1.0 - order)? * (-w).powf(order - 1.0),
    };
    let mut wk = 1.0; // w^k / k!
    let mut small = 0;
    for k in 0..200usize {
        if k > 0 {
            wk *= w / k as f64;
        }
        let s = order - k as f64;
        if positive_int.is_some() && s == 1.0 {
            continue;
        }
        let term = riemann_zeta(s, acc)? * wk;
        sum += term;
        if (k as f64) > order + 2.0 {
            if term.abs() <= tol {
                small += 1;
                if small >= 2 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
    }
    Err(Error::NoConvergence { max_terms: 200 })
}
