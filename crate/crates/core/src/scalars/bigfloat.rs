use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Num, One, Zero};
use rug::float::{Constant, ParseFloatError};
use rug::integer::Order;
use rug::ops::Pow;
use rug::{Float, Integer};

use super::real::{PrecisionCtx, Real};

/// Precision given to the additive and multiplicative identities. Binary
/// operations return the larger precision of their operands, so identities
/// never degrade a working-precision value.
const IDENTITY_PREC: u32 = 64;

/// Multiprecision binary float (MPFR) with precision-propagating arithmetic.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn from_float(f: Float) -> Self {
        BigFloat(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(self.digits10())))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or_else(|| self.digits10());
        write!(f, "{}", self.0.to_string_radix(10, Some(d.max(1))))
    }
}

impl BigFloat {
    fn digits10(&self) -> usize {
        ((self.0.prec() as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a, 'b> $tr<&'b BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'b BigFloat) -> BigFloat {
                let p = self.0.prec().max(rhs.0.prec());
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'b> $tr<&'b BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'b BigFloat) -> BigFloat {
                if self.0.prec() >= rhs.0.prec() {
                    let mut s = self;
                    s.0 = s.0 $op &rhs.0;
                    s
                } else {
                    (&self).$m(rhs)
                }
            }
        }
        impl<'a> $tr<BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                self.$m(&rhs)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                self.$m(&rhs)
            }
        }
    };
}

bin_op!(Add, add, +);
bin_op!(Sub, sub, -);
bin_op!(Mul, mul, *);
bin_op!(Div, div, /);
bin_op!(Rem, rem, %);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::with_val(IDENTITY_PREC, 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(IDENTITY_PREC, 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(BigFloat(Float::with_val(256, parsed)))
    }
}

fn to_rug_integer(n: &BigInt) -> Integer {
    let (sign, bytes) = n.to_bytes_le();
    let i = Integer::from_digits(&bytes, Order::Lsf);
    if sign == Sign::Minus {
        -i
    } else {
        i
    }
}

impl Real for BigFloat {
    fn from_i64(n: i64, ctx: &PrecisionCtx) -> Self {
        BigFloat(Float::with_val(ctx.bits(), n))
    }
    fn from_f64(x: f64, ctx: &PrecisionCtx) -> Self {
        BigFloat(Float::with_val(ctx.bits(), x))
    }
    fn from_bigint(n: &BigInt, ctx: &PrecisionCtx) -> Self {
        BigFloat(Float::with_val(ctx.bits(), &to_rug_integer(n)))
    }
    fn parse_decimal(s: &str, ctx: &PrecisionCtx) -> Option<Self> {
        let p = Float::parse(s.trim()).ok()?;
        Some(BigFloat(Float::with_val(ctx.bits(), p)))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn at(&self, ctx: &PrecisionCtx) -> Self {
        BigFloat(Float::with_val(ctx.bits(), &self.0))
    }
    fn pi(ctx: &PrecisionCtx) -> Self {
        BigFloat(Float::with_val(ctx.bits(), Constant::Pi))
    }
    fn euler_gamma(ctx: &PrecisionCtx) -> Self {
        BigFloat(Float::with_val(ctx.bits(), Constant::Euler))
    }
    fn epsilon(ctx: &PrecisionCtx) -> Self {
        let b = ctx.bits();
        BigFloat(Float::with_val(b, Float::i_exp(1, 1 - b as i32)))
    }
    fn max_digits() -> Option<u32> {
        None
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    fn sinh(&self) -> Self {
        BigFloat(self.0.clone().sinh())
    }
    fn cosh(&self) -> Self {
        BigFloat(self.0.clone().cosh())
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.0.prec().max(x.0.prec());
        BigFloat(Float::with_val(p, &self.0).atan2(&x.0))
    }
    fn floor(&self) -> Self {
        BigFloat(self.0.clone().floor())
    }
    fn round(&self) -> Self {
        BigFloat(self.0.clone().round())
    }
    fn powi(&self, n: i32) -> Self {
        BigFloat(self.0.clone().pow(n))
    }
    fn powf(&self, p: &Self) -> Self {
        let prec = self.0.prec().max(p.0.prec());
        BigFloat(Float::with_val(prec, (&self.0).pow(&p.0)))
    }
    fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
    fn to_i64(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        self.0.to_integer().and_then(|i| i.to_i64())
    }
    fn to_sci_string(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, Some(digits.max(1)))
    }
}
