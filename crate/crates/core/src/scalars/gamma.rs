//! Gamma, reciprocal gamma, digamma, trigamma and Pochhammer symbols.

use num_complex::Complex;
use num_traits::One;

use super::bernoulli::bernoulli_even_real;
use super::cplx;
use super::real::{PrecisionCtx, Real};
use crate::error::{Error, Result};

/// Shift threshold for the Stirling series: |w| >= R makes the least term
/// of the series smaller than 10^-digits.
fn stirling_radius(digits: u32) -> f64 {
    0.37 * digits as f64 + 3.0
}

fn is_nonpositive_integer<T: Real>(x: &T) -> bool {
    x.is_integer() && *x <= T::zero()
}

fn guard_for(mag: f64) -> u32 {
    3 + mag.max(1.0).log10().ceil() as u32
}

/// ln Γ(y) for y >= the Stirling radius.
fn stirling_real<T: Real>(y: &T, ctx: &PrecisionCtx) -> T {
    let half = T::from_ratio(1, 2, ctx);
    let two_pi = T::pi(ctx) * T::from_i64(2, ctx);
    let mut s = (y.clone() - &half) * &y.ln() - y + &(two_pi.ln() * &half);
    let eps = T::epsilon(ctx);
    let inv = T::one() / y;
    let inv2 = inv.clone() * &inv;
    let mut p = inv;
    for j in 1..1000usize {
        let b: T = bernoulli_even_real(j, ctx);
        let den = T::from_i64((2 * j * (2 * j - 1)) as i64, ctx);
        let term = b * &p / &den;
        let small = term.abs() < eps;
        s = s + &term;
        if small {
            break;
        }
        p = p * &inv2;
    }
    s
}

fn stirling_complex<T: Real>(w: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
    let half = T::from_ratio(1, 2, ctx);
    let two_pi = T::pi(ctx) * T::from_i64(2, ctx);
    let lw = cplx::ln(w);
    let mut s = (w - cplx::re(half.clone())) * lw - w + cplx::re(two_pi.ln() * &half);
    let eps = T::epsilon(ctx);
    let inv = Complex::new(T::one().at(ctx), T::zero()) / w;
    let inv2 = inv.clone() * &inv;
    let mut p = inv;
    for j in 1..1000usize {
        let b: T = bernoulli_even_real(j, ctx);
        let den = T::from_i64((2 * j * (2 * j - 1)) as i64, ctx);
        let term = cplx::scale(&p, &(b / &den));
        let small = cplx::abs(&term) < eps;
        s = s + term;
        if small {
            break;
        }
        p = p * &inv2;
    }
    s
}

/// Γ(x) for real x.
pub fn gamma_real<T: Real>(x: &T, ctx: &PrecisionCtx) -> Result<T> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            func: "gamma",
            at: x.to_sci_string(20),
        });
    }
    let half = T::from_ratio(1, 2, ctx);
    if *x < half {
        let one = T::one();
        let g = gamma_real(&(one - x), ctx)?;
        return Ok(T::pi(ctx) / &(x.sin_pi(ctx) * &g));
    }
    let xf = x.to_f64();
    let w = ctx.raised(guard_for(xf * xf.max(2.0).ln()));
    let xw = x.at(&w);
    let r = stirling_radius(w.digits);
    let n = if xf < r { (r - xf).ceil() as usize } else { 0 };
    let mut prod = T::one().at(&w);
    for j in 0..n {
        prod = prod * &(xw.clone() + &T::from_i64(j as i64, &w));
    }
    let y = xw + &T::from_i64(n as i64, &w);
    let lg = stirling_real(&y, &w);
    Ok((lg.exp() / &prod).at(ctx))
}

/// 1/Γ(x) for real x; exactly zero at the poles of Γ.
pub fn rgamma_real<T: Real>(x: &T, ctx: &PrecisionCtx) -> T {
    if is_nonpositive_integer(x) {
        return T::zero().at(ctx);
    }
    let half = T::from_ratio(1, 2, ctx);
    if *x < half {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let g = gamma_real(&(T::one() - x), ctx).expect("1-x is positive");
        return x.sin_pi(ctx) * &g / &T::pi(ctx);
    }
    T::one() / &gamma_real(x, ctx).expect("x is positive")
}

/// Γ(z) for complex z; reflection for Re z < 1/2.
pub fn gamma_fn<T: Real>(z: &Complex<T>, ctx: &PrecisionCtx) -> Result<Complex<T>> {
    if z.im.is_zero() {
        return gamma_real(&z.re, ctx).map(cplx::re);
    }
    let half = T::from_ratio(1, 2, ctx);
    if z.re < half {
        let one = cplx::re(T::one());
        let g = gamma_fn(&(one - z), ctx)?;
        let pi = cplx::re(T::pi(ctx));
        return Ok(pi / (cplx::sin_pi(z, ctx) * g));
    }
    let mag = cplx::abs(z).to_f64();
    let w = ctx.raised(guard_for(mag * mag.max(2.0).ln() + 1.0));
    let zw = cplx::at(z, &w);
    let r = stirling_radius(w.digits);
    let zre = z.re.to_f64();
    let n = if mag < r && zre < r {
        (r - zre).ceil() as usize
    } else {
        0
    };
    let mut prod = cplx::re(T::one().at(&w));
    for j in 0..n {
        prod = prod * (zw.clone() + cplx::re(T::from_i64(j as i64, &w)));
    }
    let y = zw + cplx::re(T::from_i64(n as i64, &w));
    let lg = stirling_complex(&y, &w);
    Ok(cplx::at(&(cplx::exp(&lg) / prod), ctx))
}

/// 1/Γ(z) for complex z; zero at the poles.
pub fn rgamma_complex<T: Real>(z: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
    if z.im.is_zero() {
        return cplx::re(rgamma_real(&z.re, ctx));
    }
    let g = gamma_fn(z, ctx).expect("non-real argument is never a pole");
    cplx::re(T::one()) / g
}

/// ψ(x) for real x.
pub fn digamma<T: Real>(x: &T, ctx: &PrecisionCtx) -> Result<T> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            func: "digamma",
            at: x.to_sci_string(20),
        });
    }
    let half = T::from_ratio(1, 2, ctx);
    if *x < half {
        let p = digamma(&(T::one() - x), ctx)?;
        return Ok(p - &(T::pi(ctx) * &x.cos_pi(ctx) / &x.sin_pi(ctx)));
    }
    let w = ctx.raised(3);
    let xw = x.at(&w);
    let r = stirling_radius(w.digits);
    let xf = x.to_f64();
    let n = if xf < r { (r - xf).ceil() as usize } else { 0 };
    let mut corr = T::zero();
    for j in 0..n {
        corr = corr + &(T::one() / &(xw.clone() + &T::from_i64(j as i64, &w)));
    }
    let y = xw + &T::from_i64(n as i64, &w);
    let inv = T::one() / &y;
    let inv2 = inv.clone() * &inv;
    let mut s = y.ln() - &(inv.clone() * &T::from_ratio(1, 2, &w));
    let eps = T::epsilon(&w);
    let mut p = inv2.clone();
    for j in 1..1000usize {
        let b: T = bernoulli_even_real(j, &w);
        let term = b * &p / &T::from_i64(2 * j as i64, &w);
        let small = term.abs() < eps;
        s = s - &term;
        if small {
            break;
        }
        p = p * &inv2;
    }
    Ok((s - &corr).at(ctx))
}

/// ψ'(x) for real x.
pub fn trigamma<T: Real>(x: &T, ctx: &PrecisionCtx) -> Result<T> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            func: "trigamma",
            at: x.to_sci_string(20),
        });
    }
    let half = T::from_ratio(1, 2, ctx);
    if *x < half {
        let p = trigamma(&(T::one() - x), ctx)?;
        let s = x.sin_pi(ctx);
        let pi = T::pi(ctx);
        return Ok(pi.clone() * &pi / &(s.clone() * &s) - &p);
    }
    let w = ctx.raised(3);
    let xw = x.at(&w);
    let r = stirling_radius(w.digits);
    let xf = x.to_f64();
    let n = if xf < r { (r - xf).ceil() as usize } else { 0 };
    let mut corr = T::zero();
    for j in 0..n {
        let d = xw.clone() + &T::from_i64(j as i64, &w);
        corr = corr + &(T::one() / &(d.clone() * &d));
    }
    let y = xw + &T::from_i64(n as i64, &w);
    let inv = T::one() / &y;
    let inv2 = inv.clone() * &inv;
    let mut s = inv.clone() + &(inv2.clone() * &T::from_ratio(1, 2, &w));
    let eps = T::epsilon(&w);
    let mut p = inv2.clone() * &inv;
    for j in 1..1000usize {
        let b: T = bernoulli_even_real(j, &w);
        let term = b * &p;
        let small = term.abs() < eps;
        s = s + &term;
        if small {
            break;
        }
        p = p * &inv2;
    }
    Ok((s + &corr).at(ctx))
}

/// (α)_r = α(α+1)...(α+r-1).
pub fn pochhammer<T: Real>(alpha: &Complex<T>, r: usize, ctx: &PrecisionCtx) -> Complex<T> {
    let mut p = cplx::re(T::one().at(ctx));
    for j in 0..r {
        p = p * (alpha.clone() + cplx::re(T::from_i64(j as i64, ctx)));
    }
    p
}

pub fn pochhammer_real<T: Real>(alpha: &T, r: usize, ctx: &PrecisionCtx) -> T {
    let mut p = T::one().at(ctx);
    for j in 0..r {
        p = p * &(alpha.clone() + &T::from_i64(j as i64, ctx));
    }
    p
}

/// Harmonic-type difference ψ(x+r) - ψ(x) = Σ_{j<r} 1/(x+j).
pub fn digamma_shift<T: Real>(x: &T, r: usize, ctx: &PrecisionCtx) -> T {
    let mut s = T::zero().at(ctx);
    for j in 0..r {
        s = s + &(T::one() / &(x.clone() + &T::from_i64(j as i64, ctx)));
    }
    s
}

/// ψ'(x+r) - ψ'(x) = -Σ_{j<r} 1/(x+j)^2.
pub fn trigamma_shift<T: Real>(x: &T, r: usize, ctx: &PrecisionCtx) -> T {
    let mut s = T::zero().at(ctx);
    for j in 0..r {
        let d = x.clone() + &T::from_i64(j as i64, ctx);
        s = s - &(T::one() / &(d.clone() * &d));
    }
    s
}

/// (μ)_k / k! for exact rational μ, as a value of `T`.
pub fn pochhammer_over_factorial<T: Real>(
    mu: &num_rational::BigRational,
    k: usize,
    ctx: &PrecisionCtx,
) -> T {
    let mut q = num_rational::BigRational::one();
    for j in 0..k {
        q = q * (mu + num_rational::BigRational::from_integer((j as i64).into()))
            / num_rational::BigRational::from_integer(((j + 1) as i64).into());
    }
    T::from_rational(&q, ctx)
}
