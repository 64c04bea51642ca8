//! Direct summation of the series with a certified tail bound.
//!
//! Tail: for Re z > 0, |K_ν(z)| ≤ K_ν(Re z), and for x > 0
//!
//! K_ν(x) ≤ √(π/(2x)) e^{−x} (1 − (ν−½)/(2x))^{−(ν+½)}   (ν ≥ ½, 2x > ν−½)
//! K_ν(x) ≤ √(π/(2x)) e^{−x}                            (0 ≤ ν < ½)
//!
//! from K_ν(x) = √(π/(2x)) e^{−x}/Γ(ν+½) ∫₀^∞ e^{−t} t^{ν−½} (1+t/(2x))^{ν−½} dt.
//! Once n² ≥ 2|a|², |n²+a²|^{−μ} ≤ 2^μ n^{−2μ}, and the remaining terms are
//! dominated by a geometric series.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::regime::SeriesParams;
use crate::scalars::bessel::BesselK;
use crate::scalars::cplx;
use crate::scalars::{PrecisionCtx, Real};

const GUARD: u32 = 10;
const BLOCK: u64 = 32;
const BLOCKS_PER_ROUND: u64 = 8;

/// N terms were summed; |Σ_{n>N}| ≤ bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBound<T> {
    pub n: u64,
    pub bound: T,
}

/// Which series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// Σ n^γ K_ν(nb/a)/(n²+a²)^μ
    Plain,
    /// Σ (−1)^{n−1} n^γ K_ν(nb/a)/(n²+a²)^μ
    Alternating,
    /// Σ n^γ K′_ν(nb/a)/(n²+a²)^μ with K′_ν = −½(K_{ν−1} + K_{ν+1})
    Derivative,
}

struct Summand<T> {
    kind: SumKind,
    k_lo: BesselK<T>,
    k_hi: Option<BesselK<T>>,
    gamma_exp: T,
    mu: T,
    z1: Complex<T>,
    a2: Complex<T>,
    w: PrecisionCtx,
}

fn summand<T: Real>(p: &SeriesParams<T>, a: &Complex<T>, kind: SumKind, w: &PrecisionCtx) -> Summand<T> {
    let nu = T::from_rational(&p.nu, w);
    let (k_lo, k_hi) = match kind {
        SumKind::Derivative => {
            let one = T::one().at(w);
            (
                BesselK::new(&(nu.clone() - &one).abs(), w),
                Some(BesselK::new(&(nu + &one), w)),
            )
        }
        _ => (BesselK::new(&nu, w), None),
    };
    let a = cplx::at(a, w);
    let b = p.b.at(w);
    Summand {
        kind,
        k_lo,
        k_hi,
        gamma_exp: T::from_rational(&p.gamma_exp, w),
        mu: T::from_rational(&p.mu, w),
        z1: cplx::scale(&(cplx::re(T::one().at(w)) / a.clone()), &b),
        a2: a.clone() * a,
        w: *w,
    }
}

impl<T: Real> Summand<T> {
    fn term(&self, n: u64) -> Result<Complex<T>> {
        let w = &self.w;
        let nn = T::from_i64(n as i64, w);
        let z = cplx::scale(&self.z1, &nn);
        let k = match &self.k_hi {
            None => self.k_lo.eval(&z)?,
            Some(hi) => {
                let s = self.k_lo.eval(&z)? + hi.eval(&z)?;
                cplx::scale(&s, &T::from_ratio(-1, 2, w))
            }
        };
        let base = cplx::re(nn.clone() * &nn) + self.a2.clone();
        let damp = cplx::exp(&cplx::scale(&cplx::ln(&base), &(-self.mu.clone())));
        let pw = (self.gamma_exp.clone() * &nn.ln()).exp();
        let t = cplx::scale(&(k * damp), &pw);
        Ok(if self.kind == SumKind::Alternating && n % 2 == 0 {
            -t
        } else {
            t
        })
    }

    fn block(&self, first: u64, len: u64) -> Result<Complex<T>> {
        let mut s = cplx::re(T::zero().at(&self.w));
        for n in first..first + len {
            s = s + self.term(n)?;
        }
        Ok(s)
    }
}

/// Upper bound of K_order(x) for x > 0, or None where the envelope is not valid.
fn k_envelope<T: Real>(order: &T, x: &T, w: &PrecisionCtx) -> Option<T> {
    let half = T::from_ratio(1, 2, w);
    let base = (T::pi(w) / &(x.clone() + x)).sqrt() * &(-x.clone()).exp();
    if *order < half {
        return Some(base);
    }
    let r = (order.clone() - &half) / &(x.clone() + x);
    if r >= T::one() {
        return None;
    }
    let f = (-(order.clone() + &half) * &(T::one() - &r).ln()).exp();
    Some(base * &f)
}

/// Certified bound on |Σ_{n>N}| of the summand magnitudes, if the geometric
/// majorant applies at N.
fn tail_bound<T: Real>(p: &SeriesParams<T>, a: &Complex<T>, kind: SumKind, n: u64, w: &PrecisionCtx) -> Option<T> {
    let m = T::from_i64(n as i64 + 1, w);
    let a_abs = cplx::abs(a).at(w);
    if m.clone() * &m < T::from_i64(2, w) * &a_abs * &a_abs {
        return None;
    }
    let nu = T::from_rational(&p.nu, w);
    let order = match kind {
        SumKind::Derivative => nu + &T::one(),
        _ => nu,
    };
    // Re(b/a) = b Re(a)/|a|²
    let x1 = p.b.at(w) * &a.re.at(w) / &(a_abs.clone() * &a_abs);
    let x = x1.clone() * &m;
    let env = k_envelope(&order, &x, w)?;
    let g = T::from_rational(&p.gamma_exp, w);
    let mu = T::from_rational(&p.mu, w);
    let two = T::from_i64(2, w);
    let lead = (mu.clone() * &two.ln() + &((g.clone() - &(two.clone() * &mu)) * &m.ln())).exp() * &env;
    // successive majorant terms shrink by at most ((n+1)/n)^p e^{−x₁}
    let half = T::from_ratio(1, 2, w);
    let p_exp = T::max_of(T::zero(), g - &(two * &mu) - &half);
    let q = ((T::one() + &(T::one() / &m)).ln() * &p_exp - &x1).exp();
    if q >= T::one() {
        return None;
    }
    Some(lead / &(T::one() - &q))
}

fn check_domain<T: Real>(a: &Complex<T>) -> Result<()> {
    if !(a.re > T::zero()) {
        return Err(Error::Domain(format!(
            "direct summation needs |arg a| < pi/2, got a = {} + {} i",
            a.re.to_sci_string(12),
            a.im.to_sci_string(12)
        )));
    }
    Ok(())
}

/// Σ_{n=1}^{N} of the chosen series, at working precision + guard digits.
pub fn partial_sum<T: Real>(
    params: &SeriesParams<T>,
    a: &Complex<T>,
    kind: SumKind,
    n: u64,
    ctx: &PrecisionCtx,
) -> Result<Complex<T>> {
    check_domain(a)?;
    let w = ctx.raised(GUARD);
    let sm = summand(params, a, kind, &w);
    let blocks: Vec<u64> = (0..n.div_ceil(BLOCK)).collect();
    let parts: Result<Vec<Complex<T>>> = blocks
        .par_iter()
        .map(|&i| {
            let first = 1 + i * BLOCK;
            sm.block(first, BLOCK.min(n + 1 - first))
        })
        .collect();
    let total = parts?
        .into_iter()
        .fold(cplx::re(T::zero().at(&w)), |s, x| s + x);
    Ok(cplx::at(&total, ctx))
}

/// Sum with N chosen so that the certified tail bound is below
/// series_tol·|partial sum|. Terms are evaluated in parallel in fixed
/// blocks and reduced in order, so results do not depend on thread count.
pub fn sum_with_bound<T: Real>(
    params: &SeriesParams<T>,
    a: &Complex<T>,
    kind: SumKind,
    ctx: &PrecisionCtx,
) -> Result<(Complex<T>, TailBound<T>)> {
    check_domain(a)?;
    let w = ctx.raised(GUARD);
    let a = cplx::at(a, &w);
    let sm = summand(params, &a, kind, &w);
    let tol = T::from_f64(ctx.series_tol, &w);
    let ratio = cplx::abs(&a).to_f64() / params.b.to_f64();
    let limit = (1e6 * (1.0 + ratio)) as u64;
    let mut total = cplx::re(T::zero().at(&w));
    let mut n = 0u64;
    loop {
        let round: Result<Vec<Complex<T>>> = (0..BLOCKS_PER_ROUND)
            .into_par_iter()
            .map(|i| sm.block(n + 1 + i * BLOCK, BLOCK))
            .collect();
        for part in round? {
            total = total + part;
        }
        n += BLOCK * BLOCKS_PER_ROUND;
        if let Some(bound) = tail_bound(params, &a, kind, n, &w) {
            if bound <= tol.clone() * &cplx::abs(&total) {
                return Ok((
                    cplx::at(&total, ctx),
                    TailBound {
                        n,
                        bound: bound.at(ctx),
                    },
                ));
            }
        }
        if n > limit {
            return Err(Error::NonconvergenceGuard { limit });
        }
    }
}

/// S^μ_{ν,γ}(a,b) = Σ n^γ K_ν(nb/a)/(n²+a²)^μ.
pub fn direct_sum<T: Real>(
    params: &SeriesParams<T>,
    a: &Complex<T>,
    ctx: &PrecisionCtx,
) -> Result<(Complex<T>, TailBound<T>)> {
    sum_with_bound(params, a, SumKind::Plain, ctx)
}

/// Σ (−1)^{n−1} n^γ K_ν(nb/a)/(n²+a²)^μ.
pub fn direct_sum_alternating<T: Real>(
    params: &SeriesParams<T>,
    a: &Complex<T>,
    ctx: &PrecisionCtx,
) -> Result<(Complex<T>, TailBound<T>)> {
    sum_with_bound(params, a, SumKind::Alternating, ctx)
}

/// Σ n^γ K′_ν(nb/a)/(n²+a²)^μ.
pub fn direct_sum_derivative<T: Real>(
    params: &SeriesParams<T>,
    a: &Complex<T>,
    ctx: &PrecisionCtx,
) -> Result<(Complex<T>, TailBound<T>)> {
    sum_with_bound(params, a, SumKind::Derivative, ctx)
}
