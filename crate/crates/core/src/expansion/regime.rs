//! Series parameters and the classification of (μ, ν, γ) by pole structure.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::hyp::rat;
use crate::scalars::{PrecisionCtx, Real};

/// Exact μ, ν, γ and a real b > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesParams<T> {
    pub mu: BigRational,
    pub nu: BigRational,
    pub gamma_exp: BigRational,
    pub b: T,
    pub chi: T,
}

impl<T: Real> SeriesParams<T> {
    pub fn new(mu: BigRational, nu: BigRational, gamma_exp: BigRational, b: T) -> Result<Self> {
        if !mu.is_positive() {
            return Err(Error::Domain(format!("mu must be positive, got {mu}")));
        }
        if nu.is_negative() {
            return Err(Error::Domain(format!("nu must be non-negative, got {nu}")));
        }
        if !(b > T::zero()) {
            return Err(Error::Domain(format!("b must be positive, got {b}")));
        }
        let chi = b.clone() * &b / &(T::one() + T::one() + T::one() + T::one());
        Ok(SeriesParams {
            mu,
            nu,
            gamma_exp,
            b,
            chi,
        })
    }

    /// Same series with other exact parameters and the same b. μ and ν are
    /// not validated, so intermediate instances (e.g. ν−1 < 0) are allowed.
    pub fn with(&self, mu: BigRational, nu: BigRational, gamma_exp: BigRational) -> Self {
        SeriesParams {
            mu,
            nu,
            gamma_exp,
            b: self.b.clone(),
            chi: self.chi.clone(),
        }
    }

    pub fn b_at(&self, ctx: &PrecisionCtx) -> T {
        self.b.at(ctx)
    }

    /// χ = b²/4 recomputed at `ctx`.
    pub fn chi_at(&self, ctx: &PrecisionCtx) -> T {
        let b = self.b.at(ctx);
        b.clone() * &b / &T::from_i64(4, ctx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply(self, q: &BigRational) -> BigRational {
        match self {
            Sign::Plus => q.clone(),
            Sign::Minus => -q.clone(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which expansion applies, decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regime {
    /// Simple poles only: ν non-integer, γ ± ν not a negative odd integer.
    Generic,
    /// ν = 0, γ not a negative odd integer.
    NuZero,
    /// ν = 0, γ = 2m: the bracket collapses onto ζ′(−2m−2k).
    NuZeroEven { m: u32 },
    /// ν = 1, γ not a non-positive even integer.
    NuOne,
    /// ν = 1, γ = 2m+1.
    NuOneOdd { m: u32 },
    /// γ ± ν = −(2m+1), ν non-integer, μ non-integer: double pole at s=1.
    DoublePole { m: u32, sign: Sign },
    /// γ ± ν = −1, ν non-integer, μ = 1: double pole with coincident lattices.
    CoincidentDoublePole { sign: Sign },
    /// ν = 0, γ = −1, μ = 1: treble pole at s=1.
    TreblePole,
    /// ν ∈ {2,3,…}, reduced by the K_ν recurrence.
    RecurrenceReduce { nu: u32 },
    /// μ = 2, γ + ν = −1, ν non-integer: lifted from μ = 1 by differentiation.
    MuTwoLift,
    Unsupported(String),
}

impl Regime {
    pub fn is_supported(&self) -> bool {
        !matches!(self, Regime::Unsupported(_))
    }

    /// Short machine tag.
    pub fn tag(&self) -> String {
        match self {
            Regime::Generic => "generic".into(),
            Regime::NuZero => "nu-zero".into(),
            Regime::NuZeroEven { m } => format!("nu-zero-even(m={m})"),
            Regime::NuOne => "nu-one".into(),
            Regime::NuOneOdd { m } => format!("nu-one-odd(m={m})"),
            Regime::DoublePole { m, sign } => format!("double-pole(m={m},sign={sign})"),
            Regime::CoincidentDoublePole { sign } => format!("coincident-double-pole(sign={sign})"),
            Regime::TreblePole => "treble-pole".into(),
            Regime::RecurrenceReduce { nu } => format!("recurrence(nu={nu})"),
            Regime::MuTwoLift => "mu-two-lift".into(),
            Regime::Unsupported(_) => "unsupported".into(),
        }
    }

    /// The hypothesis that selected this regime, in words.
    pub fn describe(&self) -> String {
        match self {
            Regime::Generic => {
                "simple poles: nu non-integer, gamma±nu not a negative odd integer".into()
            }
            Regime::NuZero => "nu=0, gamma not a negative odd integer".into(),
            Regime::NuZeroEven { m } => format!("nu=0, gamma=2m with m={m}"),
            Regime::NuOne => "nu=1, gamma not a non-positive even integer".into(),
            Regime::NuOneOdd { m } => format!("nu=1, gamma=2m+1 with m={m}"),
            Regime::DoublePole { m, sign } => format!(
                "gamma{sign}nu=-(2m+1) with m={m}, nu non-integer, mu non-integer"
            ),
            Regime::CoincidentDoublePole { sign } => {
                format!("gamma{sign}nu=-1, nu non-integer, mu=1")
            }
            Regime::TreblePole => "nu=0, gamma=-1, mu=1".into(),
            Regime::RecurrenceReduce { nu } => {
                format!("integer nu={nu}>=2, reduced by K_(n+2)=K_n+2(n+1)/x K_(n+1)")
            }
            Regime::MuTwoLift => "mu=2, gamma+nu=-1, nu non-integer (lift from mu=1)".into(),
            Regime::Unsupported(r) => format!("unsupported: {r}"),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.tag(), self.describe())
    }
}

/// m with q = −(2m+1), if any.
pub(crate) fn negative_odd(q: &BigRational) -> Option<u32> {
    if !q.is_integer() || !q.is_negative() {
        return None;
    }
    let n = (-q).to_integer();
    let n = n.to_u64()?;
    if n % 2 == 1 {
        u32::try_from((n - 1) / 2).ok()
    } else {
        None
    }
}

/// m with q = 2m, m ≥ 0.
fn nonnegative_even(q: &BigRational) -> Option<u32> {
    if !q.is_integer() || q.is_negative() {
        return None;
    }
    let n = q.to_integer().to_u64()?;
    if n % 2 == 0 {
        u32::try_from(n / 2).ok()
    } else {
        None
    }
}

fn small_int(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Classify exact parameters. The rules only look at μ, ν, γ.
pub fn classify_exact(mu: &BigRational, nu: &BigRational, g: &BigRational) -> Regime {
    if !mu.is_positive() || nu.is_negative() {
        return Regime::Unsupported(format!("need mu>0 and nu>=0, got mu={mu}, nu={nu}"));
    }
    if let Some(n) = small_int(nu) {
        return match n {
            0 => {
                if negative_odd(g).is_some() {
                    if mu.is_one() && *g == rat(-1) {
                        Regime::TreblePole
                    } else {
                        Regime::Unsupported(format!(
                            "nu=0 with gamma={g} a negative odd integer is only covered for gamma=-1, mu=1"
                        ))
                    }
                } else if let Some(m) = nonnegative_even(g) {
                    Regime::NuZeroEven { m }
                } else {
                    Regime::NuZero
                }
            }
            1 => {
                if nonnegative_even(&-g.clone()).is_some() {
                    Regime::Unsupported(format!(
                        "nu=1 requires gamma not in {{0,-2,-4,...}}, got gamma={g}"
                    ))
                } else if let Some(m) = nonnegative_even(&(g - rat(1))) {
                    Regime::NuOneOdd { m }
                } else {
                    Regime::NuOne
                }
            }
            n if n >= 2 => {
                let lower = classify_exact(mu, &rat(n - 2), g);
                let side = classify_exact(mu, &rat(n - 1), &(g - rat(1)));
                for (what, r) in [("nu-2", &lower), ("nu-1, gamma-1", &side)] {
                    if let Regime::Unsupported(why) = r {
                        return Regime::Unsupported(format!(
                            "recurrence for nu={n} needs the ({what}) instance, which is unsupported: {why}"
                        ));
                    }
                }
                Regime::RecurrenceReduce { nu: n as u32 }
            }
            _ => unreachable!("nu is non-negative"),
        };
    }
    for sign in [Sign::Plus, Sign::Minus] {
        let s = g + sign.apply(nu);
        if let Some(m) = negative_odd(&s) {
            if !mu.is_integer() {
                return Regime::DoublePole { m, sign };
            }
            if m == 0 && mu.is_one() {
                return Regime::CoincidentDoublePole { sign };
            }
            if m == 0 && *mu == rat(2) && sign == Sign::Plus {
                return Regime::MuTwoLift;
            }
            return Regime::Unsupported(format!(
                "gamma{sign}nu=-{} with integer mu={mu}: coincident pole lattices not covered",
                2 * m + 1
            ));
        }
    }
    Regime::Generic
}

pub fn classify<T: Real>(params: &SeriesParams<T>) -> Regime {
    classify_exact(&params.mu, &params.nu, &params.gamma_exp)
}

/// ν as a small integer, if it is one.
pub(crate) fn integer_nu(nu: &BigRational) -> Option<i64> {
    small_int(nu)
}

