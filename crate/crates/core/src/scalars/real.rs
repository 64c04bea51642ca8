use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

use crate::error::{Error, Result};

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision and tolerances, threaded through every evaluation.
///
/// Tolerances are relative. `series_tol` governs tails of convergent
/// series, `quad_tol` the stopping rule of the quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionCtx {
    pub digits: u32,
    pub quad_tol: f64,
    pub series_tol: f64,
}

/// Minimum gap, in decimal digits, between the working precision and any
/// requested tolerance.
pub const GUARD_DIGITS: u32 = 5;

impl PrecisionCtx {
    pub const DEFAULT_DIGITS: u32 = 60;
    pub const MIN_DIGITS: u32 = 15;

    /// Context with tolerances derived from `digits`:
    /// series 10^-(digits-5), quadrature 10^-(digits-10).
    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Domain(format!(
                "precision of {digits} digits is below the minimum of {}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Self::unchecked(digits))
    }

    fn unchecked(digits: u32) -> Self {
        PrecisionCtx {
            digits,
            quad_tol: 10f64.powi(-(digits as i32 - 2 * GUARD_DIGITS as i32)),
            series_tol: 10f64.powi(-(digits as i32 - GUARD_DIGITS as i32)),
        }
    }

    pub fn with_tolerances(digits: u32, quad_tol: f64, series_tol: f64) -> Result<Self> {
        let base = Self::new(digits)?;
        let floor = 10f64.powi(-(digits as i32 - GUARD_DIGITS as i32));
        for (name, t) in [("quad_tol", quad_tol), ("series_tol", series_tol)] {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::Domain(format!("{name} must lie in (0,1), got {t}")));
            }
            if t < floor * (1.0 - 1e-12) {
                return Err(Error::Domain(format!(
                    "{name}={t:e} is finer than the working precision allows ({floor:e})"
                )));
            }
        }
        Ok(PrecisionCtx {
            quad_tol,
            series_tol,
            ..base
        })
    }

    /// Binary precision used for multiprecision values.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 16
    }

    /// A context with `extra` more digits and correspondingly finer tolerances.
    pub fn raised(&self, extra: u32) -> Self {
        PrecisionCtx {
            digits: self.digits + extra,
            quad_tol: self.quad_tol * 10f64.powi(-(extra as i32)),
            series_tol: self.series_tol * 10f64.powi(-(extra as i32)),
        }
    }

    /// Digits actually available for scalar type `T`.
    pub fn effective_digits<T: Real>(&self) -> u32 {
        match T::max_digits() {
            Some(m) => self.digits.min(m),
            None => self.digits,
        }
    }

    /// `10^-d` clamped to the resolution of `T`.
    pub fn tol<T: Real>(&self, d: u32) -> T {
        let d = d.min(self.effective_digits::<T>());
        let t = T::from_i64(10, self).powi(-(d as i32));
        let e = T::epsilon(self) * T::from_i64(4, self);
        if t < e {
            e
        } else {
            t
        }
    }

    /// Series tolerance as a value of `T`, never below a few ulps.
    pub fn series_eps<T: Real>(&self) -> T {
        let t = T::from_f64(self.series_tol, self);
        let e = T::epsilon(self) * T::from_i64(4, self);
        if t < e {
            e
        } else {
            t
        }
    }

    pub fn quad_eps<T: Real>(&self) -> T {
        let t = T::from_f64(self.quad_tol, self);
        let e = T::epsilon(self) * T::from_i64(16, self);
        if t < e {
            e
        } else {
            t
        }
    }
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        Self::unchecked(Self::DEFAULT_DIGITS)
    }
}

/// Real scalar contract used by every numerical routine.
///
/// Constructors take the precision context so multiprecision values are
/// born at the right precision; `f64` ignores it.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_i64(n: i64, ctx: &PrecisionCtx) -> Self;
    fn from_f64(x: f64, ctx: &PrecisionCtx) -> Self;
    fn from_bigint(n: &BigInt, ctx: &PrecisionCtx) -> Self;
    fn parse_decimal(s: &str, ctx: &PrecisionCtx) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Round to the precision of `ctx`.
    fn at(&self, ctx: &PrecisionCtx) -> Self;
    fn pi(ctx: &PrecisionCtx) -> Self;
    fn euler_gamma(ctx: &PrecisionCtx) -> Self;
    /// Unit roundoff at `ctx`.
    fn epsilon(ctx: &PrecisionCtx) -> Self;
    /// `None` for arbitrary precision types.
    fn max_digits() -> Option<u32>;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn floor(&self) -> Self;
    fn round(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn is_integer(&self) -> bool;
    fn to_i64(&self) -> Option<i64>;
    fn to_sci_string(&self, digits: usize) -> String;

    fn from_ratio(p: i64, q: i64, ctx: &PrecisionCtx) -> Self {
        Self::from_i64(p, ctx) / Self::from_i64(q, ctx)
    }

    fn from_rational(q: &BigRational, ctx: &PrecisionCtx) -> Self {
        let n = Self::from_bigint(q.numer(), ctx);
        if q.denom() == &BigInt::from(1) {
            n
        } else {
            n / Self::from_bigint(q.denom(), ctx)
        }
    }

    fn powf(&self, p: &Self) -> Self {
        (self.ln() * p).exp()
    }

    fn is_negative_real(&self) -> bool {
        *self < Self::zero()
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    /// sin(πx) with exact argument reduction; exact zeros at integers.
    fn sin_pi(&self, ctx: &PrecisionCtx) -> Self {
        let r = reduce_mod2(self, ctx);
        let half = Self::from_ratio(1, 2, ctx);
        let one = Self::from_i64(1, ctx);
        if r.is_zero() || r == one || r == -one.clone() {
            return Self::zero().at(ctx);
        }
        // fold into [-1/2, 1/2]
        let t = if r > half {
            one.clone() - &r
        } else if r < -half.clone() {
            -one.clone() - &r
        } else {
            r
        };
        sin_pi_small(&t, ctx)
    }

    /// cos(πx) with exact argument reduction; exact zeros at half-integers.
    fn cos_pi(&self, ctx: &PrecisionCtx) -> Self {
        let r = reduce_mod2(self, ctx).abs();
        let half = Self::from_ratio(1, 2, ctx);
        let one = Self::from_i64(1, ctx);
        if r == half {
            return Self::zero().at(ctx);
        }
        if r > half {
            -cos_pi_small(&(one - &r), ctx)
        } else {
            cos_pi_small(&r, ctx)
        }
    }
}

fn reduce_mod2<T: Real>(x: &T, ctx: &PrecisionCtx) -> T {
    let two = T::from_i64(2, ctx);
    let n = (x.clone() / &two).round();
    x.clone() - &(n * &two)
}

// |t| <= 1/2
fn sin_pi_small<T: Real>(t: &T, ctx: &PrecisionCtx) -> T {
    let quarter = T::from_ratio(1, 4, ctx);
    let half = T::from_ratio(1, 2, ctx);
    let pi = T::pi(ctx);
    if t.abs() <= quarter {
        (pi * t).sin()
    } else if *t > T::zero() {
        (pi * &(half - t)).cos()
    } else {
        -(pi * &(half + t)).cos()
    }
}

// 0 <= t <= 1/2
fn cos_pi_small<T: Real>(t: &T, ctx: &PrecisionCtx) -> T {
    let quarter = T::from_ratio(1, 4, ctx);
    let half = T::from_ratio(1, 2, ctx);
    let pi = T::pi(ctx);
    if *t <= quarter {
        (pi * t).cos()
    } else {
        (pi * &(half - t)).sin()
    }
}

impl Real for f64 {
    fn from_i64(n: i64, _: &PrecisionCtx) -> Self {
        n as f64
    }
    fn from_f64(x: f64, _: &PrecisionCtx) -> Self {
        x
    }
    fn from_bigint(n: &BigInt, _: &PrecisionCtx) -> Self {
        num_traits::ToPrimitive::to_f64(n).unwrap_or(if n.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        })
    }
    fn parse_decimal(s: &str, _: &PrecisionCtx) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn at(&self, _: &PrecisionCtx) -> Self {
        *self
    }
    fn pi(_: &PrecisionCtx) -> Self {
        std::f64::consts::PI
    }
    fn euler_gamma(_: &PrecisionCtx) -> Self {
        0.577_215_664_901_532_9
    }
    fn epsilon(_: &PrecisionCtx) -> Self {
        f64::EPSILON
    }
    fn max_digits() -> Option<u32> {
        Some(15)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn round(&self) -> Self {
        f64::round(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn is_integer(&self) -> bool {
        self.is_finite() && self.fract() == 0.0
    }
    fn to_i64(&self) -> Option<i64> {
        if Real::is_integer(self) && f64::abs(*self) < 9.2e18 {
            Some(*self as i64)
        } else {
            None
        }
    }
    fn to_sci_string(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
}
