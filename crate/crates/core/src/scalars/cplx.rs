//! Principal-branch complex elementary functions over any [`Real`].

use num_complex::Complex;


use super::real::{PrecisionCtx, Real};

pub fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

pub fn abs<T: Real>(z: &Complex<T>) -> T {
    if z.im.is_zero() {
        return z.re.abs();
    }
    if z.re.is_zero() {
        return z.im.abs();
    }
    (z.re.clone() * &z.re + z.im.clone() * &z.im).sqrt()
}

/// Argument in (-π, π].
pub fn arg<T: Real>(z: &Complex<T>) -> T {
    z.im.atan2(&z.re)
}

pub fn exp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    if z.im.is_zero() {
        return Complex::new(m, z.im.clone());
    }
    Complex::new(m.clone() * &z.im.cos(), m * &z.im.sin())
}

/// Principal logarithm.
pub fn ln<T: Real>(z: &Complex<T>) -> Complex<T> {
    if z.im.is_zero() && z.re > T::zero() {
        return Complex::new(z.re.ln(), z.im.clone());
    }
    Complex::new(abs(z).ln(), arg(z))
}

/// Principal square root.
pub fn sqrt<T: Real>(z: &Complex<T>) -> Complex<T> {
    if z.im.is_zero() && z.re >= T::zero() {
        return Complex::new(z.re.sqrt(), z.im.clone());
    }
    let r = abs(z);
    let two = T::one() + T::one();
    if z.re >= T::zero() {
        let t = ((r + &z.re) / &two).sqrt();
        let im = z.im.clone() / &(t.clone() * &two);
        Complex::new(t, im)
    } else {
        let t = ((r - &z.re) / &two).sqrt();
        let re = z.im.abs() / &(t.clone() * &two);
        let im = if z.im < T::zero() { -t } else { t };
        Complex::new(re, im)
    }
}

/// z^w = exp(w Log z), principal branch.
pub fn pow<T: Real>(z: &Complex<T>, w: &Complex<T>) -> Complex<T> {
    if z.im.is_zero() && z.re > T::zero() && w.im.is_zero() {
        return re(z.re.powf(&w.re));
    }
    exp(&(ln(z) * w))
}

/// z^p for real p, principal branch.
pub fn powr<T: Real>(z: &Complex<T>, p: &T) -> Complex<T> {
    if z.im.is_zero() && z.re > T::zero() {
        return re(z.re.powf(p));
    }
    let l = ln(z);
    exp(&Complex::new(l.re * p, l.im * p))
}

pub fn scale<T: Real>(z: &Complex<T>, x: &T) -> Complex<T> {
    Complex::new(z.re.clone() * x, z.im.clone() * x)
}

/// sin(πz) with exact reduction of the real part.
pub fn sin_pi<T: Real>(z: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
    if z.im.is_zero() {
        return Complex::new(z.re.sin_pi(ctx), T::zero());
    }
    let y = T::pi(ctx) * &z.im;
    Complex::new(z.re.sin_pi(ctx) * &y.cosh(), z.re.cos_pi(ctx) * &y.sinh())
}

/// cos(πz) with exact reduction of the real part.
pub fn cos_pi<T: Real>(z: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
    if z.im.is_zero() {
        return Complex::new(z.re.cos_pi(ctx), T::zero());
    }
    let y = T::pi(ctx) * &z.im;
    Complex::new(z.re.cos_pi(ctx) * &y.cosh(), -(z.re.sin_pi(ctx) * &y.sinh()))
}

/// Round both parts to the precision of `ctx`.
pub fn at<T: Real>(z: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
    Complex::new(z.re.at(ctx), z.im.at(ctx))
}

/// Distance from `z` to the nearest integer on the real axis.
pub fn dist_to_integer<T: Real>(z: &Complex<T>) -> T {
    let d = z.re.clone() - &z.re.round();
    abs(&Complex::new(d, z.im.clone()))
}
