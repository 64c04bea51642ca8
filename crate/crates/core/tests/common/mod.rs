#![allow(dead_code)]

use mbx_core::scalars::cplx;
use mbx_core::{BigComplex, BigReal, PrecisionCtx, Real};
use num_complex::Complex;

pub fn ctx(digits: u32) -> PrecisionCtx {
    PrecisionCtx::new(digits).unwrap()
}

pub fn big(s: &str, c: &PrecisionCtx) -> BigReal {
    BigReal::parse_decimal(s, c).unwrap()
}

pub fn ratio(p: i64, q: i64, c: &PrecisionCtx) -> BigReal {
    BigReal::from_ratio(p, q, c)
}

pub fn cbig(re: &str, im: &str, c: &PrecisionCtx) -> BigComplex {
    Complex::new(big(re, c), big(im, c))
}

/// |x - y| / |y| as f64, via log10 so tiny values survive.
pub fn rel_err(x: &BigReal, y: &BigReal) -> f64 {
    let d = (x.clone() - y).abs();
    if d.is_zero_value() {
        return 0.0;
    }
    let l = d.ln().to_f64() - y.abs().ln().to_f64();
    10f64.powf(l / std::f64::consts::LN_10)
}

pub fn crel_err(x: &BigComplex, y: &BigComplex) -> f64 {
    let d = cplx::abs(&(x.clone() - y));
    if d.is_zero_value() {
        return 0.0;
    }
    let l = d.ln().to_f64() - cplx::abs(y).ln().to_f64();
    10f64.powf(l / std::f64::consts::LN_10)
}

pub trait ZeroCheck {
    fn is_zero_value(&self) -> bool;
}

impl ZeroCheck for BigReal {
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

