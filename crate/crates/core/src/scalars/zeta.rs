//! Riemann zeta function on the real line and its derivative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bernoulli::bernoulli_even_real;
use super::gamma::gamma_real;
use super::real::{PrecisionCtx, Real};
use crate::error::{Error, Result};

fn pole<T: Real>(s: &T) -> Error {
    Error::Pole {
        func: "zeta",
        at: s.to_sci_string(20),
    }
}

fn em_cutoff(digits: u32, s: f64) -> usize {
    let base = (0.4 * digits as f64 + 10.0).ceil();
    base.max(s.abs() + 10.0) as usize
}

/// ζ(s) by Euler–Maclaurin summation, valid for every real s ≠ 1.
///
/// Used directly for s ≥ 0; for s < 0 it serves as an independent
/// continuation path against the functional equation.
pub fn zeta_euler_maclaurin<T: Real>(s: &T, ctx: &PrecisionCtx) -> Result<T> {
    let one = T::one();
    if *s == one {
        return Err(pole(s));
    }
    let sf = s.to_f64();
    let d = ctx.effective_digits::<T>();
    let mut guard = 5u32;
    if sf < 0.0 {
        // Σ n^{-s} grows like N^{1-s}; the result does not
        let n0 = em_cutoff(d, sf);
        guard += ((1.0 - sf) * (2.0 * n0 as f64).log10()).ceil() as u32;
    }
    let n = em_cutoff(d + guard, sf);
    let w = ctx.raised(guard);
    let s = s.at(&w);
    let mut sum = T::zero().at(&w);
    for k in 1..n {
        let t = (-(s.clone()) * &T::from_i64(k as i64, &w).ln()).exp();
        sum = sum + &t;
    }
    let nn = T::from_i64(n as i64, &w);
    let npow = (-(s.clone()) * &nn.ln()).exp();
    sum = sum + &(npow.clone() * &nn / &(s.clone() - &one));
    sum = sum + &(npow.clone() / &T::from_i64(2, &w));
    let eps = T::epsilon(&w);
    let n2 = nn.clone() * &nn;
    let mut poch = s.clone();
    let mut fact = T::from_i64(2, &w);
    let mut np = npow / &nn;
    let mut prev: Option<T> = None;
    for j in 1..4 * n + 200 {
        let b: T = bernoulli_even_real(j, &w);
        let term = b * &poch / &fact * &np;
        sum = sum + &term;
        let mag = term.abs();
        if mag <= eps.clone() * &sum.abs() || prev.as_ref().is_some_and(|p| mag > *p) {
            break;
        }
        prev = Some(mag);
        let jj = (2 * j) as i64;
        poch = poch
            * &(s.clone() + &T::from_i64(jj - 1, &w))
            * &(s.clone() + &T::from_i64(jj, &w));
        fact = fact * &T::from_i64((jj + 1) * (jj + 2), &w);
        np = np / &n2;
    }
    Ok(sum.at(ctx))
}

/// ζ(s) for real s ≠ 1: Euler–Maclaurin for s ≥ 0, functional equation
/// for s < 0, exact zeros at the negative even integers.
pub fn zeta<T: Real>(s: &T, ctx: &PrecisionCtx) -> Result<T> {
    let one = T::one();
    if *s == one {
        return Err(pole(s));
    }
    if s.is_zero() {
        return Ok(T::from_ratio(-1, 2, ctx));
    }
    if *s >= T::zero() {
        return zeta_euler_maclaurin(s, ctx);
    }
    if let Some(n) = s.to_i64() {
        if n % 2 == 0 {
            return Ok(T::zero().at(ctx));
        }
    }
    let w = ctx.raised(5);
    let s = s.at(&w);
    let one_minus = T::one() - &s;
    let z = zeta_euler_maclaurin(&one_minus, &w)?;
    let g = gamma_real(&one_minus, &w)?;
    let two = T::from_i64(2, &w);
    let pi = T::pi(&w);
    let f = two.powf(&s) * &pi.powf(&(s.clone() - &one)) * &(s.clone() / &two).sin_pi(&w);
    Ok((f * &g * &z).at(ctx))
}

/// Central-difference step and precision used by [`zeta_deriv`].
fn deriv_ctx(ctx: &PrecisionCtx) -> (PrecisionCtx, i32) {
    let w = ctx.raised(ctx.digits + 5);
    let h_exp = (ctx.digits as i32 + 1) / 2;
    (w, h_exp)
}

/// ζ'(s) by central difference at twice the working precision with step
/// 10^-(digits/2).
pub fn zeta_deriv<T: Real>(s: &T, ctx: &PrecisionCtx) -> Result<T> {
    if *s == T::one() {
        return Err(pole(s));
    }
    let (w, h_exp) = deriv_ctx(ctx);
    let h = T::from_i64(10, &w).powi(-h_exp);
    let s = s.at(&w);
    let zp = zeta(&(s.clone() + &h), &w)?;
    let zm = zeta(&(s - &h), &w)?;
    Ok(((zp - &zm) / &(h * &T::from_i64(2, &w))).at(ctx))
}

/// ζ at an exact rational argument: exact pole and trivial-zero detection.
pub fn zeta_rational<T: Real>(s: &BigRational, ctx: &PrecisionCtx) -> Result<T> {
    if s.is_one() {
        return Err(Error::Pole {
            func: "zeta",
            at: "1".into(),
        });
    }
    if is_trivial_zero(s) {
        return Ok(T::zero().at(ctx));
    }
    zeta(&T::from_rational(s, ctx), ctx)
}

pub fn zeta_deriv_rational<T: Real>(s: &BigRational, ctx: &PrecisionCtx) -> Result<T> {
    if s.is_one() {
        return Err(Error::Pole {
            func: "zeta",
            at: "1".into(),
        });
    }
    let (w, _) = deriv_ctx(ctx);
    let x: T = T::from_rational(s, &w);
    zeta_deriv(&x, ctx)
}

/// s ∈ {-2, -4, -6, ...}.
pub fn is_trivial_zero(s: &BigRational) -> bool {
    s.is_integer() && s.is_negative() && s.numer().is_even()
}

/// Exact ζ(-n) for integer n ≥ 0 via ζ(-n) = (-1)^n B_{n+1}/(n+1).
pub fn zeta_negative_integer(n: u32) -> BigRational {
    if n == 0 {
        return BigRational::new((-1).into(), 2.into());
    }
    if n % 2 == 0 {
        return BigRational::zero();
    }
    let b = super::bernoulli::bernoulli_even(((n + 1) / 2) as usize);
    let q = b / BigRational::from_integer(BigInt::from(n + 1));
    -q
}
