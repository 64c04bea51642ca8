//! Evaluation of the Mathieu–Bessel series
//!
//! S^μ_{ν,γ}(a,b) = Σ_{n≥1} n^γ K_ν(nb/a) / (n² + a²)^μ
//!
//! by direct summation with a certified tail bound, and by its large-|a|
//! asymptotic expansions obtained from the Mellin transform of
//! x^γ K_ν(bx)/(1+x²)^μ.
//!
//! Every numerical routine is generic over [`Real`]; [`BigReal`] is the
//! multiprecision instantiation used throughout the expansions.

pub mod error;
pub mod expansion;
pub mod hyp;
pub mod mellin;
pub mod oracle;
pub mod scalars;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use scalars::{BigFloat, PrecisionCtx, Real};

/// Multiprecision real scalar.
pub type BigReal = scalars::BigFloat;
/// Multiprecision complex scalar.
pub type BigComplex = num_complex::Complex<BigReal>;
