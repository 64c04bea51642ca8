//! Exact parameter and argument syntax.
//!
//! Parameters μ, ν, γ are exact rationals ("2/3", "-5/4", "1"). The
//! argument a is "x" (real), "re,im", or "mod@arg" (also "mod∠arg") with arg
//! in radians or as a multiple of π: "pi/4", "3pi/8", "-pi/8", "0.3".

use std::str::FromStr;

use mbx_core::scalars::cplx;
use mbx_core::{BigComplex, BigReal, PrecisionCtx, Real};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::CliError;

fn perr(msg: String) -> CliError {
    CliError::Parse(msg)
}

/// An exact rational; decimals are refused.
pub fn rational(name: &str, s: &str) -> Result<BigRational, CliError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.contains(['.', 'e', 'E']) {
        return Err(perr(format!(
            "{name}: '{s}' is not an exact rational; write it as p/q (e.g. 2/3), \
             since the expansion regime is decided by exact arithmetic"
        )));
    }
    if let Some((_, d)) = t.split_once('/') {
        if d.trim().parse::<i64>().is_ok_and(|d| d == 0) {
            return Err(perr(format!("{name}: '{s}' has a zero denominator")));
        }
    }
    BigRational::from_str(t).map_err(|_| perr(format!("{name}: cannot parse '{s}' as a rational p/q")))
}

/// A real number, either rational p/q or decimal.
pub fn real(name: &str, s: &str, ctx: &PrecisionCtx) -> Result<BigReal, CliError> {
    let t = s.trim();
    if let Ok(q) = rational(name, t) {
        return Ok(BigReal::from_rational(&q, ctx));
    }
    BigReal::parse_decimal(t, ctx).ok_or_else(|| perr(format!("{name}: cannot parse '{s}' as a number")))
}

/// An angle: a rational multiple of π, or decimal radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    PiMultiple(BigRational),
    Radians(String),
}

pub fn angle(s: &str) -> Result<Angle, CliError> {
    let t: String = s.trim().to_lowercase().replace('π', "pi").chars().filter(|c| !c.is_whitespace()).collect();
    let Some((coef, den)) = t.split_once("pi") else {
        return Ok(Angle::Radians(t));
    };
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let c = match coef {
        "" | "+" => BigRational::from_integer(1.into()),
        "-" => BigRational::from_integer((-1).into()),
        _ => rational("arg", coef).map_err(|_| perr(format!("arg: cannot parse coefficient '{coef}' in '{s}'")))?,
    };
    let q = match den {
        "" => c,
        _ => {
            let d = den
                .strip_prefix('/')
                .ok_or_else(|| perr(format!("arg: unexpected '{den}' after pi in '{s}'")))?;
            let d = rational("arg", d).map_err(|_| perr(format!("arg: cannot parse denominator '{d}' in '{s}'")))?;
            if d.is_zero() {
                return Err(perr(format!("arg: zero denominator in '{s}'")));
            }
            c / d
        }
    };
    Ok(Angle::PiMultiple(q))
}

/// cos and sin of the angle.
fn cos_sin(a: &Angle, ctx: &PrecisionCtx) -> Result<(BigReal, BigReal), CliError> {
    match a {
        Angle::PiMultiple(q) => {
            let t = BigReal::from_rational(q, ctx);
            Ok((t.cos_pi(ctx), t.sin_pi(ctx)))
        }
        Angle::Radians(r) => {
            let x = real("arg", r, ctx)?;
            Ok((x.cos(), x.sin()))
        }
    }
}

/// The complex argument a.
pub fn argument(s: &str, ctx: &PrecisionCtx) -> Result<BigComplex, CliError> {
    let t = s.trim();
    if let Some((m, arg)) = t.split_once('@').or_else(|| t.split_once('∠')) {
        let r = real("a (modulus)", m, ctx)?;
        let (c, sn) = cos_sin(&angle(arg)?, ctx)?;
        return Ok(Complex::new(r.clone() * &c, r * &sn));
    }
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex::new(real("a (real part)", re, ctx)?, real("a (imaginary part)", im, ctx)?));
    }
    Ok(cplx::re(real("a", t, ctx)?))
}
