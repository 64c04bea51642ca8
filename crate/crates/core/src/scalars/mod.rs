//! Scalar arithmetic and the special functions consumed by every other module.

pub mod bernoulli;
pub mod bessel;
pub mod bigfloat;
pub mod constants;
pub mod cplx;
pub mod gamma;
pub mod real;
pub mod zeta;

pub use bessel::{bessel_j, bessel_k, bessel_y0, BesselK};
pub use bigfloat::BigFloat;
pub use constants::{euler_gamma, stieltjes1, Constants};
pub use gamma::{digamma, gamma_fn, gamma_real, pochhammer, rgamma_real, trigamma};
pub use real::{PrecisionCtx, Real};
pub use zeta::{zeta, zeta_deriv};
