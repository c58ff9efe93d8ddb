//! Small-κ asymptotics of the harmonically trapped ideal Bose gas from
//! spectral ζ-functions, with brute-force level sums as ground truth.

pub mod error;
pub mod expansion;
pub mod series;
pub mod specfun;
pub mod spectrum;
pub mod thermo;

pub use error::{Error, Result};
