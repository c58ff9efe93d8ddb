//! Truncated power series `c_0 + c_1 t + ... + c_N t^N` over an arbitrary
//! coefficient field.
//!
//! Used with `BigRational` coefficients for the exact path of the generalized
//! Bernoulli polynomials and with `f64` otherwise.

use num_traits::{FromPrimitive, Num};
use std::ops::Neg;

/// Coefficient types usable in a [`Series`].
pub trait Coeff: Clone + Num + Neg<Output = Self> + FromPrimitive {}

impl<T: Clone + Num + Neg<Output = T> + FromPrimitive> Coeff for T {}

#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    /// Series from explicit coefficients; the truncation order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = T::one();
        Series { coeffs }
    }

    /// `exp(a t)` truncated at `t^order`.
    pub fn exp_linear(a: &T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = T::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = term * a.clone() / from_usize::<T>(n);
            coeffs.push(term.clone());
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse. Panics if the constant term vanishes.
    pub fn inverse(&self) -> Self {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "series with zero constant term is not invertible");
        let order = self.order();
        let mut inv: Vec<T> = Vec::with_capacity(order + 1);
        inv.push(T::one() / c0.clone());
        for n in 1..=order {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * inv[n - k].clone();
            }
            inv.push(-acc / c0.clone());
        }
        Series { coeffs: inv }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

pub(crate) fn from_usize<T: FromPrimitive>(n: usize) -> T {
    T::from_usize(n).expect("coefficient type must represent small integers")
}
