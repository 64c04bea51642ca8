use super::bernoulli::bernoulli_even_real;
use super::real::{PrecisionCtx, Real};

/// First Stieltjes constant to 100 significant digits.
pub const STIELTJES1_LITERAL: &str =
    "-0.07281584548367672486058637587490131913773633833433795259900655974140143357151148487808692824484401460";

/// Digits of precision up to which the literal is used as is.
const LITERAL_DIGITS: u32 = 95;

/// The constants that appear in the expansions.
#[derive(Debug, Clone)]
pub struct Constants<T> {
    pub euler_gamma: T,
    pub stieltjes1: T,
    pub pi: T,
}

impl<T: Real> Constants<T> {
    pub fn new(ctx: &PrecisionCtx) -> Self {
        Constants {
            euler_gamma: T::euler_gamma(ctx),
            stieltjes1: stieltjes1(ctx),
            pi: T::pi(ctx),
        }
    }
}

pub fn euler_gamma<T: Real>(ctx: &PrecisionCtx) -> T {
    T::euler_gamma(ctx)
}

/// γ₁; the stored literal up to 95 digits, Euler–Maclaurin beyond.
pub fn stieltjes1<T: Real>(ctx: &PrecisionCtx) -> T {
    if ctx.digits <= LITERAL_DIGITS {
        T::parse_decimal(STIELTJES1_LITERAL, ctx).expect("literal parses")
    } else {
        stieltjes1_euler_maclaurin(ctx)
    }
}

/// γ₁ = Σ_{k<N} ln k / k − (ln N)²/2 + ln N/(2N) + Σ_j B_{2j}(ln N − H_{2j−1})/(2j N^{2j}).
pub fn stieltjes1_euler_maclaurin<T: Real>(ctx: &PrecisionCtx) -> T {
    let w = ctx.raised(10);
    let n = (0.4 * w.digits as f64 + 10.0).ceil() as i64;
    let mut s = T::zero().at(&w);
    for k in 2..n {
        let kk = T::from_i64(k, &w);
        s = s + &(kk.ln() / &kk);
    }
    let nn = T::from_i64(n, &w);
    let ln_n = nn.ln();
    let two = T::from_i64(2, &w);
    s = s - &(ln_n.clone() * &ln_n / &two) + &(ln_n.clone() / &(two * &nn));
    let eps = T::epsilon(&w);
    let n2 = nn.clone() * &nn;
    let mut np = n2.clone();
    // H_{2j-1}
    let mut harm = T::one().at(&w);
    for j in 1..(4 * n as usize + 100) {
        let b: T = bernoulli_even_real(j, &w);
        let term = b * &(ln_n.clone() - &harm) / &(T::from_i64(2 * j as i64, &w) * &np);
        s = s + &term;
        if term.abs() < eps {
            break;
        }
        let jj = 2 * j as i64;
        harm = harm + &(T::one() / &T::from_i64(jj, &w)) + &(T::one() / &T::from_i64(jj + 1, &w));
        np = np * &n2;
    }
    s.at(ctx)
}
