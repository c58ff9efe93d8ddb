//! Complex-argument ζ for contour quadrature.

use crate::specfun::bernoulli_number_f64;
use num_complex::Complex64;

const EM_ORDER: usize = 16;

/// Hurwitz ζ(s, a) for complex `s ≠ 1` and real `a > 0` by Euler-Maclaurin.
///
/// Accurate to about 1e-12 for `Re s ≥ -2` and `|Im s| ≲ 100`; the head sum
/// cancels increasingly for more negative `Re s`.
pub(crate) fn hurwitz_zeta_complex(s: Complex64, a: f64) -> Complex64 {
    let cutoff = 20 + s.norm().ceil() as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..cutoff {
        sum += Complex64::new(n as f64 + a, 0.0).powc(-s);
    }
    let x = cutoff as f64 + a;
    let xc = Complex64::new(x, 0.0);
    let x_pow = xc.powc(-s);
    sum += xc * x_pow / (s - 1.0) + x_pow * 0.5;
    // rising factorial s(s+1)…(s+2k-2) and x^{-s-2k+1}
    let mut rising = s;
    let mut power = x_pow / x;
    let mut fact = 2.0;
    for k in 1..=EM_ORDER {
        sum += rising * power * (bernoulli_number_f64(2 * k) / fact);
        let j = (2 * k) as f64;
        rising *= (s + j - 1.0) * (s + j);
        power /= x * x;
        fact *= (j + 1.0) * (j + 2.0);
    }
    sum
}

pub(crate) fn riemann_zeta_complex(s: Complex64) -> Complex64 {
    hurwitz_zeta_complex(s, 1.0)
}
