use crate::series::Series;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::{LazyLock, RwLock};

static BERNOULLI: LazyLock<RwLock<Vec<BigRational>>> =
    LazyLock::new(|| RwLock::new(vec![BigRational::one()]));

/// Bernoulli number B_m as an exact rational, with B_1 = -1/2.
pub fn bernoulli_number(m: usize) -> BigRational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache poisoned").get(m) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().expect("bernoulli cache poisoned");
    // Another writer may have filled past `m` while we waited.
    while table.len() <= m {
        let n = table.len();
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        let bn = -acc / BigRational::from_integer(BigInt::from(n + 1));
        table.push(bn);
    }
    table[m].clone()
}

pub fn bernoulli_number_f64(m: usize) -> f64 {
    bernoulli_number(m).to_f64().unwrap_or(f64::NAN)
}

/// Ordinary Bernoulli polynomial B_m(x) = Σ_k C(m,k) B_k x^{m-k}.
pub fn bernoulli_poly(m: usize, x: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=m {
        acc += binom * bernoulli_number_f64(k) * x.powi((m - k) as i32);
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// Generalized Bernoulli polynomial B_n^{(v)}(x, r), defined by
///
/// ```text
/// e^{-xt} / (1 - e^{-rt})^v = (-1/r)^v Σ_n (-t)^{n-v} / n! · B_n^{(v)}(x, r)
/// ```
///
/// computed exactly by power-series inversion.
pub fn gen_bernoulli_poly_exact(n: usize, v: u32, x: &BigRational, r: &BigRational) -> BigRational {
    assert!(!r.is_zero(), "level spacing r must be non-zero");
    let f = kernel_series(n, v, x, r);
    let mut value = f.coeff(n).clone() * r.pow(v as i32) * factorial_exact(n);
    if n % 2 == 1 {
        value = -value;
    }
    value
}

/// Floating-point entry point for B_n^{(v)}(x, r).
///
/// Arguments that are multiples of 1/64 (all spectral offsets and spacings of
/// the harmonic trap) take the exact rational path; others are expanded in
/// `f64`.
pub fn gen_bernoulli_poly(n: usize, v: u32, x: f64, r: f64) -> f64 {
    match (small_dyadic(x), small_dyadic(r)) {
        (Some(xq), Some(rq)) => gen_bernoulli_poly_exact(n, v, &xq, &rq)
            .to_f64()
            .unwrap_or(f64::NAN),
        _ => {
            let f = kernel_series(n, v, &x, &r);
            let mut sign = 1.0;
            if n % 2 == 1 {
                sign = -1.0;
            }
            sign * f.coeff(n) * r.powi(v as i32) * super::gamma::factorial(n as u32)
        }
    }
}

/// Power series of e^{-xt} · (t / (1 - e^{-rt}))^v through t^order.
fn kernel_series<T: crate::series::Coeff>(order: usize, v: u32, x: &T, r: &T) -> Series<T> {
    // (1 - e^{-rt}) / t = Σ_j (-1)^j r^{j+1} t^j / (j+1)!
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut rp = r.clone();
    let mut fact = T::one();
    for j in 0..=order {
        fact = fact * crate::series::from_usize::<T>(j + 1);
        let mut c = rp.clone() / fact.clone();
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
        rp = rp * r.clone();
    }
    let damped = Series::new(coeffs).inverse().pow(v);
    Series::exp_linear(&-x.clone(), order).mul(&damped)
}

fn factorial_exact(n: usize) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

fn small_dyadic(x: f64) -> Option<BigRational> {
    let scaled = x * 64.0;
    if x.is_finite() && scaled.fract() == 0.0 && scaled.abs() < 1e12 {
        Some(BigRational::new(BigInt::from(scaled as i64), BigInt::from(64)))
    } else {
        None
    }
}
