//! Terminating ₁F₂ polynomials, entire ₁F₂/₂F₃ series and the first- and
//! second-order coefficients obtained when their parameters are perturbed.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::cplx;
use crate::scalars::gamma::{gamma_real, rgamma_complex};
use crate::scalars::{bessel_j, PrecisionCtx, Real};

/// Guard digits used for every finite or convergent sum in this module.
pub const SUM_GUARD: u32 = 10;

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The terminating series
///
/// F_k^{(μ)}(ν;χ) = Σ_{r=0}^k (−k)_r (−χ)^r / ((1+ν)_r (1−μ−k)_r r!)
///
/// with its coefficients held exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct FPoly {
    pub k: usize,
    pub mu: BigRational,
    pub nu: BigRational,
    /// Coefficient of (−χ)^r.
    pub coeffs: Vec<BigRational>,
}

impl FPoly {
    pub fn new(k: usize, mu: &BigRational, nu: &BigRational) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut c = BigRational::one();
        coeffs.push(c.clone());
        let b1 = rat(1) + nu;
        let b2 = rat(1) - mu - rat(k as i64);
        for r in 0..k {
            let rr = rat(r as i64);
            let d1 = &b1 + &rr;
            let d2 = &b2 + &rr;
            if d1.is_zero() || d2.is_zero() {
                return Err(Error::ParameterCollision(format!(
                    "F_{k} with mu={mu}, nu={nu}: lower parameter vanishes at r={r}"
                )));
            }
            c = c * (rat(r as i64) - rat(k as i64)) / (d1 * d2 * rat(r as i64 + 1));
            coeffs.push(c.clone());
        }
        Ok(FPoly {
            k,
            mu: mu.clone(),
            nu: nu.clone(),
            coeffs,
        })
    }

    /// Exact degree in χ.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Coefficient of χ^k (sign of (−χ)^k folded in).
    pub fn leading_coefficient(&self) -> BigRational {
        let c = self.coeffs[self.k].clone();
        if self.k % 2 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn eval<T: Real>(&self, chi: &T, ctx: &PrecisionCtx) -> T {
        let w = ctx.raised(SUM_GUARD);
        let x = -chi.at(&w);
        let mut p = T::one().at(&w);
        let mut s = T::zero().at(&w);
        for c in &self.coeffs {
            s = s + &(T::from_rational(c, &w) * &p);
            p = p * &x;
        }
        s.at(ctx)
    }

    /// Σ_r c_r (−χ)^r w_r for per-index weights.
    pub fn eval_weighted<T: Real>(&self, chi: &T, weights: &[T], ctx: &PrecisionCtx) -> T {
        let w = ctx.raised(SUM_GUARD);
        let x = -chi.at(&w);
        let mut p = T::one().at(&w);
        let mut s = T::zero().at(&w);
        for (c, wt) in self.coeffs.iter().zip(weights) {
            s = s + &(T::from_rational(c, &w) * &p * wt);
            p = p * &x;
        }
        s.at(ctx)
    }
}

/// F_k^{(μ)}(ν;χ) for exact μ, ν.
pub fn f_poly<T: Real>(
    k: usize,
    mu: &BigRational,
    nu: &BigRational,
    chi: &T,
    ctx: &PrecisionCtx,
) -> Result<T> {
    Ok(FPoly::new(k, mu, nu)?.eval(chi, ctx))
}

/// F_k^{(μ)}(ν;χ) with real (possibly perturbed) μ, ν.
pub fn f_poly_real<T: Real>(k: usize, mu: &T, nu: &T, chi: &T, ctx: &PrecisionCtx) -> Result<T> {
    let kk = T::from_i64(k as i64, ctx);
    let one = T::one();
    hyp1f2(
        &(-kk.clone()),
        &(one.clone() - mu - &kk),
        &(one + nu),
        &(-chi.clone()),
        ctx,
    )
}

fn real_nonpositive_int<T: Real>(x: &T) -> Option<i64> {
    if x.is_integer() && *x <= T::zero() {
        x.to_i64()
    } else {
        None
    }
}

/// Number of terms after which a series with upper parameter `upper`
/// stops, or `None` if it does not terminate.
fn termination<T: Real>(upper: &[&T]) -> Option<usize> {
    upper
        .iter()
        .filter_map(|a| real_nonpositive_int(*a))
        .map(|n| (-n) as usize + 1)
        .min()
}

fn check_lower<T: Real>(lower: &[&T], stop: Option<usize>, what: &str) -> Result<()> {
    for b in lower {
        if let Some(n) = real_nonpositive_int(*b) {
            // the term with index 1-n divides by zero
            let first_bad = (1 - n) as usize;
            if stop.map_or(true, |s| first_bad < s) {
                return Err(Error::ParameterCollision(format!(
                    "{what}: lower parameter {} is a non-positive integer reached before termination",
                    b.to_sci_string(12)
                )));
            }
        }
    }
    Ok(())
}

/// Σ_n Π(a_i)_n / Π(b_j)_n · z^n/n!, real parameters, entire in z.
fn pfq<T: Real>(upper: &[&T], lower: &[&T], z: &T, ctx: &PrecisionCtx, what: &str) -> Result<T> {
    let stop = termination(upper);
    check_lower(lower, stop, what)?;
    let w = ctx.raised(SUM_GUARD);
    let z = z.at(&w);
    let eps = w.series_eps::<T>();
    let mut t = T::one().at(&w);
    let mut s = t.clone();
    let scale = upper
        .iter()
        .chain(lower)
        .map(|p| p.to_f64().abs())
        .fold(z.to_f64().abs(), f64::max);
    let mut small = 0;
    let mut n = 0usize;
    loop {
        if stop == Some(n + 1) {
            break;
        }
        let nn = T::from_i64(n as i64, &w);
        let mut num = z.clone();
        for a in upper {
            num = num * &(a.at(&w) + &nn);
        }
        let mut den = T::from_i64(n as i64 + 1, &w);
        for b in lower {
            den = den * &(b.at(&w) + &nn);
        }
        t = t * &num / &den;
        s = s + &t;
        n += 1;
        if t.abs() <= eps.clone() * &s.abs() || t.is_zero() {
            small += 1;
            if small >= 3 && n as f64 > scale {
                break;
            }
        } else {
            small = 0;
        }
        if n > 100_000 {
            return Err(Error::NoConvergence(format!("{what} series")));
        }
    }
    Ok(s.at(ctx))
}

/// ₁F₂(α; β, γ; z) for real parameters.
pub fn hyp1f2<T: Real>(alpha: &T, beta: &T, gamma_p: &T, z: &T, ctx: &PrecisionCtx) -> Result<T> {
    pfq(&[alpha], &[beta, gamma_p], z, ctx, "1F2")
}

/// ₂F₃(a₁, a₂; b₁, b₂, b₃; z) for real parameters.
pub fn hyp2f3<T: Real>(
    a1: &T,
    a2: &T,
    b1: &T,
    b2: &T,
    b3: &T,
    z: &T,
    ctx: &PrecisionCtx,
) -> Result<T> {
    pfq(&[a1, a2], &[b1, b2, b3], z, ctx, "2F3")
}

/// Regularized ₁𝐅₂(α; β, γ; z) = ₁F₂/(Γ(β)Γ(γ)) for complex parameters
/// and real z. Entire in all parameters; no collisions possible.
pub fn hyp1f2_reg_complex<T: Real>(
    alpha: &Complex<T>,
    beta: &Complex<T>,
    gamma_p: &Complex<T>,
    z: &T,
    ctx: &PrecisionCtx,
) -> Complex<T> {
    let w = ctx.raised(SUM_GUARD);
    let alpha = cplx::at(alpha, &w);
    let beta = cplx::at(beta, &w);
    let gamma_p = cplx::at(gamma_p, &w);
    let z = z.at(&w);
    let eps = w.series_eps::<T>();
    let mut rb = rgamma_complex(&beta, &w);
    let mut rc = rgamma_complex(&gamma_p, &w);
    // (α)_n z^n / n!
    let mut p = cplx::re(T::one().at(&w));
    let mut s = p.clone() * &rb * &rc;
    let scale = [&alpha, &beta, &gamma_p]
        .iter()
        .map(|c| cplx::abs(c).to_f64())
        .fold(z.to_f64().abs(), f64::max);
    let mut small = 0;
    let one = cplx::re(T::one().at(&w));
    for n in 0..100_000usize {
        let nn = cplx::re(T::from_i64(n as i64, &w));
        let bn = beta.clone() + &nn;
        let gn = gamma_p.clone() + &nn;
        rb = if bn.re.is_zero() && bn.im.is_zero() {
            one.clone()
        } else {
            rb / bn
        };
        rc = if gn.re.is_zero() && gn.im.is_zero() {
            one.clone()
        } else {
            rc / gn
        };
        p = p * (alpha.clone() + &nn);
        p = cplx::scale(&p, &(z.clone() / &T::from_i64(n as i64 + 1, &w)));
        let t = p.clone() * &rb * &rc;
        s = s + &t;
        let tm = cplx::abs(&t);
        if tm <= eps.clone() * &cplx::abs(&s) {
            small += 1;
            if small >= 3 && (n + 1) as f64 > scale {
                break;
            }
        } else {
            small = 0;
        }
    }
    cplx::at(&s, ctx)
}

/// The first-order change of ₁F₂(α; β, γ; z) when its parameters move by
/// (ε₁, ε₂, ε₃):
///
/// Σ_{r≥1} (α)_r z^r / ((β)_r (γ)_r r!) · (ε₁Δψ(α+r) − ε₂Δψ(β+r) − ε₃Δψ(γ+r)),
///
/// with Δψ(x+r) = ψ(x+r) − ψ(x).
#[allow(clippy::too_many_arguments)]
pub fn hyp1f2_first_order<T: Real>(
    alpha: &T,
    beta: &T,
    gamma_p: &T,
    eps1: &T,
    eps2: &T,
    eps3: &T,
    z: &T,
    ctx: &PrecisionCtx,
) -> Result<T> {
    let stop = termination(&[alpha]);
    if stop.is_some() && !eps1.is_zero() {
        return Err(Error::HypothesisViolation(format!(
            "upper parameter {} is a non-positive integer; its perturbation is not first order",
            alpha.to_sci_string(12)
        )));
    }
    check_lower(&[beta, gamma_p], stop, "perturbed 1F2")?;
    let w = ctx.raised(SUM_GUARD);
    let (a, b, g, z) = (alpha.at(&w), beta.at(&w), gamma_p.at(&w), z.at(&w));
    let eps = w.series_eps::<T>();
    let (mut da, mut db, mut dg) = (T::zero().at(&w), T::zero().at(&w), T::zero().at(&w));
    let mut t = T::one().at(&w);
    let mut s = T::zero().at(&w);
    let scale = [&a, &b, &g, &z]
        .iter()
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max);
    let mut small = 0;
    for r in 0..100_000usize {
        if stop == Some(r + 1) {
            break;
        }
        let rr = T::from_i64(r as i64, &w);
        let ar = a.clone() + &rr;
        let br = b.clone() + &rr;
        let gr = g.clone() + &rr;
        t = t * &ar * &z / &(br.clone() * &gr * &T::from_i64(r as i64 + 1, &w));
        if !eps1.is_zero() {
            da = da + &(T::one() / &ar);
        }
        db = db + &(T::one() / &br);
        dg = dg + &(T::one() / &gr);
        let d = eps1.clone() * &da - &(eps2.clone() * &db) - &(eps3.clone() * &dg);
        let term = t.clone() * &d;
        s = s + &term;
        if term.abs() <= eps.clone() * &s.abs() || term.is_zero() {
            small += 1;
            if small >= 3 && (r + 1) as f64 > scale {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(s.at(ctx))
}

/// Which perturbed hypergeometric value a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FStarSite {
    /// F_k^{(μ)}(ε;χ) = F_k^{(μ)}(0;χ){1 − εF* + …}; ν = 0 log terms.
    NuZero,
    /// The ν = 1 limit: Σ c_r (−χ)^r (Δψ(1+r) − r/(2(1+r))) / F_k^{(μ)}(1;χ).
    NuOne,
    /// ₁F₂(−m+ε; 1−μ−m+ε, 1+ν; −χ) = F_m^{(μ)}(ν;χ){1 + εF* + …},
    /// including the ₂F₃ tail produced past the terminating index.
    TerminatingShift,
    /// ₁F₂(1; 2−ε/2, 2+ν−ε/2; −χ) = ₁F₂(1; 2, 2+ν; −χ){1 + (ε/2)F* + …}.
    UnitUpper,
    /// F_k^{(1)}(0;χ) weighted by Δψ(1+r): the double-pole sum with μ=1, ν=0.
    UnitMuNuZero,
    /// ₁F₂(1; 2−ε/2, 2−ε/2; −χ) = F{1 + εF*₁ + ε²F*₂ + …}, first order.
    TreblePoleFirst,
    /// Second-order coefficient of the same expansion.
    TreblePoleSecond,
}

/// A perturbation coefficient and the unperturbed value it is normalized by.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbCoeff<T> {
    pub site: FStarSite,
    pub order: u8,
    pub value: T,
    pub norm: T,
}

/// Δψ(1+r) = Σ_{j=1}^r 1/j for r = 0..=n.
fn harmonic<T: Real>(n: usize, ctx: &PrecisionCtx) -> Vec<T> {
    let mut v = Vec::with_capacity(n + 1);
    let mut h = T::zero().at(ctx);
    v.push(h.clone());
    for j in 1..=n {
        h = h + &(T::one() / &T::from_i64(j as i64, ctx));
        v.push(h.clone());
    }
    v
}

/// Evaluate the coefficient at `site`. `k` is the polynomial index
/// (m for [`FStarSite::TerminatingShift`]); it is ignored by the sites
/// defined through infinite series.
pub fn fstar_site<T: Real>(
    site: FStarSite,
    k: usize,
    mu: &BigRational,
    nu: &BigRational,
    chi: &T,
    ctx: &PrecisionCtx,
) -> Result<PerturbCoeff<T>> {
    let w = ctx.raised(SUM_GUARD);
    let chi = chi.at(&w);
    let (order, value, norm) = match site {
        FStarSite::NuZero => {
            let f = FPoly::new(k, mu, &BigRational::zero())?;
            let h = harmonic::<T>(k, &w);
            (1, f.eval_weighted(&chi, &h, &w), f.eval(&chi, &w))
        }
        FStarSite::NuOne => {
            let f = FPoly::new(k, mu, &rat(1))?;
            let h = harmonic::<T>(k, &w);
            let wts: Vec<T> = h
                .into_iter()
                .enumerate()
                .map(|(r, hr)| hr - &T::from_ratio(r as i64, 2 * (r as i64 + 1), &w))
                .collect();
            (1, f.eval_weighted(&chi, &wts, &w), f.eval(&chi, &w))
        }
        FStarSite::TerminatingShift => {
            let (v, n) = terminating_shift(k, mu, nu, &chi, &w)?;
            (1, v, n)
        }
        FStarSite::UnitUpper => {
            let (v, n) = unit_upper(nu, &chi, &w)?;
            (1, v, n)
        }
        FStarSite::UnitMuNuZero => {
            let f = FPoly::new(k, &rat(1), &BigRational::zero())?;
            let h = harmonic::<T>(k, &w);
            (1, f.eval_weighted(&chi, &h, &w), f.eval(&chi, &w))
        }
        FStarSite::TreblePoleFirst | FStarSite::TreblePoleSecond => {
            let (f1, f2, n) = treble_pole(&chi, &w)?;
            if site == FStarSite::TreblePoleFirst {
                (1, f1, n)
            } else {
                (2, f2, n)
            }
        }
    };
    if norm.is_zero() {
        return Err(Error::ParameterCollision(format!(
            "{site:?}: normalizing value vanishes"
        )));
    }
    Ok(PerturbCoeff {
        site,
        order,
        value: (value / &norm).at(ctx),
        norm: norm.at(ctx),
    })
}

/// Unnormalized first-order coefficient of
/// ₁F₂(−n+1+ε; 1−α−n+ε, 1+ν; −χ) with n = m+1, α = μ−1, and F_m.
fn terminating_shift<T: Real>(
    m: usize,
    mu: &BigRational,
    nu: &BigRational,
    chi: &T,
    w: &PrecisionCtx,
) -> Result<(T, T)> {
    let n = m + 1;
    let alpha = mu - rat(1);
    if mu.is_integer() && mu.is_positive() {
        return Err(Error::ParameterCollision(format!(
            "terminating shift requires non-integer mu, got {mu}"
        )));
    }
    let f = FPoly::new(m, mu, nu)?;
    // Δψ(n−r) − Δψ(n+α−r), with Δψ(x−r) = ψ(x−r) − ψ(x)
    let alpha_t: T = T::from_rational(&alpha, w);
    let mut wts = Vec::with_capacity(m + 1);
    let mut acc = T::zero().at(w);
    wts.push(acc.clone());
    for r in 1..=m {
        let j = T::from_i64((n - r) as i64, w);
        let shifted = T::from_i64((n - r) as i64, w) + &alpha_t;
        acc = acc - &(T::one() / &j) + &(T::one() / &shifted);
        wts.push(acc.clone());
    }
    let head = f.eval_weighted(chi, &wts, w);
    // tail: −(−χ)^n / (n (1+ν)_n (α)_n) · ₂F₃(1,1; n+1, n+1+ν, 1−α; −χ)
    let mut den = rat(n as i64);
    for j in 0..n {
        den = den * (rat(1) + nu + rat(j as i64)) * (&alpha + rat(j as i64));
    }
    if den.is_zero() {
        return Err(Error::ParameterCollision(format!(
            "terminating shift: (1+nu)_n (mu-1)_n vanishes for nu={nu}, mu={mu}"
        )));
    }
    let one = T::one().at(w);
    let nn = T::from_i64(n as i64, w);
    let nu_t: T = T::from_rational(nu, w);
    let f23 = hyp2f3(
        &one,
        &one,
        &(nn.clone() + &one),
        &(nn + &one + &nu_t),
        &(one.clone() - &alpha_t),
        &(-chi.clone()),
        w,
    )?;
    let mchi_n = (-chi.clone()).powi(n as i32);
    let tail = -(mchi_n * &f23 / &T::from_rational(&den, w));
    Ok((head + &tail, f.eval(chi, w)))
}

/// Unnormalized first-order coefficient of ₁F₂(1; 2−ε/2, 2+ν−ε/2; −χ)
/// per unit ε/2, and ₁F₂(1; 2, 2+ν; −χ).
fn unit_upper<T: Real>(nu: &BigRational, chi: &T, w: &PrecisionCtx) -> Result<(T, T)> {
    let one = T::one().at(w);
    let two = T::from_i64(2, w);
    let nu_t: T = T::from_rational(nu, w);
    let b2 = two.clone() + &nu_t;
    let z = -chi.clone();
    let norm = hyp1f2(&one, &two, &b2, &z, w)?;
    let m1 = -one.clone();
    let v = hyp1f2_first_order(&one, &two, &b2, &T::zero(), &m1, &m1, &z, w)?;
    Ok((v, norm))
}

/// The same coefficient written through Σ (−χ)^r/((1+ν)_r r!), normalized
/// by F(χ) = 1 − χ^{−ν/2}Γ(1+ν)J_ν(b). Must agree with
/// [`FStarSite::UnitUpper`].
pub fn unit_upper_bessel_form<T: Real>(nu: &BigRational, chi: &T, ctx: &PrecisionCtx) -> Result<T> {
    let w = ctx.raised(SUM_GUARD);
    let chi = chi.at(&w);
    let nu_t: T = T::from_rational(nu, &w);
    let one = T::one().at(&w);
    let b = chi.sqrt() * &T::from_i64(2, &w);
    let g = gamma_real(&(one.clone() + &nu_t), &w)?;
    let f = one.clone()
        - &(chi.powf(&(-(nu_t.clone()) / &T::from_i64(2, &w))) * &g * &bessel_j(&nu_t, &b, &w)?);
    let konst = (T::from_i64(2, &w) + &nu_t) / &(one.clone() + &nu_t);
    let eps = w.series_eps::<T>();
    let mut t = one.clone();
    let (mut h1, mut hn) = (T::zero().at(&w), T::zero().at(&w));
    let mut s = T::zero().at(&w);
    let mut small = 0;
    for r in 1..100_000usize {
        let rr = T::from_i64(r as i64, &w);
        let a = nu_t.clone() + &rr;
        t = t * &(-chi.clone()) / &(a.clone() * &rr);
        h1 = h1 + &(T::one() / &rr);
        hn = hn + &(T::one() / &a);
        let term = t.clone() * &(h1.clone() + &hn - &konst);
        s = s + &term;
        if term.abs() <= eps.clone() * &s.abs() {
            small += 1;
            if small >= 3 && r as f64 > chi.to_f64() {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok((-(s / &f)).at(ctx))
}

/// First- and second-order coefficients of ₁F₂(1; 2−ε/2, 2−ε/2; −χ) and
/// F(χ) = Σ (−χ)^r/((r+1)!)².
fn treble_pole<T: Real>(chi: &T, w: &PrecisionCtx) -> Result<(T, T, T)> {
    let eps = w.series_eps::<T>();
    let mut t = T::one().at(w);
    let mut f = t.clone();
    let (mut d, mut dp) = (T::zero().at(w), T::zero().at(w));
    let (mut s1, mut s2) = (T::zero().at(w), T::zero().at(w));
    let quarter = T::from_ratio(1, 4, w);
    let two = T::from_i64(2, w);
    let mut small = 0;
    for r in 1..100_000usize {
        let j = T::from_i64(r as i64 + 1, w);
        t = t * &(-chi.clone()) / &(j.clone() * &j);
        let inv = T::one() / &j;
        d = d + &inv;
        dp = dp - &(inv.clone() * &inv);
        f = f + &t;
        let a = t.clone() * &d;
        let b = t.clone() * &quarter * &(two.clone() * &d * &d - &dp);
        s1 = s1 + &a;
        s2 = s2 + &b;
        if a.abs() <= eps.clone() * &s1.abs() && b.abs() <= eps.clone() * &s2.abs() {
            small += 1;
            if small >= 3 && r as f64 > chi.to_f64() {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok((s1, s2, f))
}

/// σ_k = Σ_{r=0}^k (−k)_r (−χ)^r / (r! (1−μ−k)_r (r+1)!).
pub fn sigma_k<T: Real>(k: usize, mu: &BigRational, chi: &T, ctx: &PrecisionCtx) -> Result<T> {
    let mut c = BigRational::one();
    let mut coeffs = vec![c.clone()];
    let b = rat(1) - mu - rat(k as i64);
    for r in 0..k {
        let d = &b + rat(r as i64);
        if d.is_zero() {
            return Err(Error::ParameterCollision(format!(
                "sigma_{k} with mu={mu}: lower parameter vanishes at r={r}"
            )));
        }
        c = c * (rat(r as i64) - rat(k as i64)) / (d * rat(r as i64 + 1) * rat(r as i64 + 2));
        coeffs.push(c.clone());
    }
    let w = ctx.raised(SUM_GUARD);
    let x = -chi.at(&w);
    let mut p = T::one().at(&w);
    let mut s = T::zero().at(&w);
    for c in &coeffs {
        s = s + &(T::from_rational(c, &w) * &p);
        p = p * &x;
    }
    Ok(s.at(ctx))
}
