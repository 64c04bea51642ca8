//! Series builders, one per regime. Each returns the constant part (the
//! residue at s = 1, in powers and logs of a) and the families of
//! asymptotic terms.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expansion::regime::{classify, Regime, SeriesParams, Sign};
use crate::expansion::terms::{AsymptoticSeries, Family, Term};
use crate::hyp::{fstar_site, rat, FPoly, FStarSite};
use crate::mellin::{h_at_one, MellinKernel, Part};
use crate::scalars::constants::{euler_gamma, stieltjes1};
use crate::scalars::gamma::{digamma, gamma_real, pochhammer_over_factorial};
use crate::scalars::zeta::{zeta_deriv_rational, zeta_rational};
use crate::scalars::{bessel_j, bessel_y0, cplx};
use crate::scalars::{PrecisionCtx, Real};

/// Sign of the constant term of the coincident double-pole residue bracket.
pub(crate) const COINCIDENT_C0_SIGN: i64 = 1;

fn wctx(ctx: &PrecisionCtx) -> PrecisionCtx {
    ctx.raised(5)
}

fn sgn<T: Real>(k: usize) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

fn k_rat(k: usize) -> BigRational {
    rat(k as i64)
}

fn chi_pow<T: Real>(chi: &T, e: &BigRational, w: &PrecisionCtx) -> T {
    (T::from_rational(e, w) * &chi.ln()).exp()
}

fn gamma_q<T: Real>(x: &BigRational, w: &PrecisionCtx) -> Result<T> {
    gamma_real(&T::from_rational(x, w), w)
}

/// log 2 − log b − γ₀: the a-independent part of log(2a/b) − γ₀.
fn log_shift<T: Real>(p: &SeriesParams<T>, w: &PrecisionCtx) -> T {
    T::from_i64(2, w).ln() - &p.b_at(w).ln() - &euler_gamma::<T>(w)
}

fn mismatch(expected: &str, found: &Regime) -> Error {
    Error::RegimeMismatch {
        expected: expected.into(),
        found: found.tag(),
    }
}

fn h_term<T: Real>(p: &SeriesParams<T>, regime: &Regime, ctx: &PrecisionCtx) -> Result<Term<T>> {
    let h = h_at_one(p, regime, &wctx(ctx))?;
    Ok(Term::constant(
        &p.gamma_exp - rat(2) * &p.mu + rat(1),
        h,
    ))
}

/// R(a;ν′) = ½a^{−ν′−2μ}χ^{ν′/2}Γ(−ν′) Σ_k (−1)^k (μ)_k/k! ζ(−γ−ν′−2k) F_k^{(μ)}(ν′;χ) a^{−2k},
/// for signed non-integer ν′. Index `skip` is omitted.
pub fn r_family<T: Real>(
    p: &SeriesParams<T>,
    nu_signed: &BigRational,
    skip: Option<usize>,
    ctx: &PrecisionCtx,
) -> Result<Family<T>> {
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let pre = chi_pow(&chi, &(nu_signed / rat(2)), &w) * &gamma_q::<T>(&-nu_signed.clone(), &w)?
        / &T::from_i64(2, &w);
    let (mu, nu, g) = (p.mu.clone(), nu_signed.clone(), p.gamma_exp.clone());
    let label = format!("R(a;{nu})");
    Ok(Family::new(label, move |k| {
        if skip == Some(k) {
            return Ok(None);
        }
        let z = -g.clone() - &nu - rat(2) * k_rat(k);
        if z.is_one() {
            return Err(Error::ZetaPoleHit { k });
        }
        let power = -nu.clone() - rat(2) * &mu - rat(2) * k_rat(k);
        let zeta: T = zeta_rational(&z, &w)?;
        if zeta.is_zero() {
            return Ok(Some(Term::real(power, T::zero().at(&w))));
        }
        let f = FPoly::new(k, &mu, &nu)?.eval(&chi, &w);
        let c = pre.clone() * &sgn::<T>(k) * &pochhammer_over_factorial::<T>(&mu, k, &w) * &zeta * &f;
        Ok(Some(Term::real(power, c)))
    }))
}

/// R̃(a;ν′): R(a;ν′) with ζ(−ω_k) replaced by (1 − 2^{1+ω_k})ζ(−ω_k), ω_k = γ+ν′+2k.
pub fn alternating_r_family<T: Real>(
    p: &SeriesParams<T>,
    nu_signed: &BigRational,
    ctx: &PrecisionCtx,
) -> Result<Family<T>> {
    let w = wctx(ctx);
    let base = r_family(p, nu_signed, None, ctx)?;
    let (g, nu) = (p.gamma_exp.clone(), nu_signed.clone());
    Ok(Family::new(format!("alt R(a;{nu})"), move |k| {
        let omega = g.clone() + &nu + rat(2) * k_rat(k);
        let f = T::one() - &T::from_i64(2, &w).powf(&T::from_rational(&(omega + rat(1)), &w));
        Ok(base.term(k)?.map(|t| t.scaled_real(&f)))
    }))
}

/// ν non-integer, γ ± ν not a negative odd integer.
pub fn simple_poles<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    if regime != Regime::Generic {
        return Err(mismatch("generic", &regime));
    }
    Ok(AsymptoticSeries::new(
        regime.clone(),
        vec![h_term(p, &regime, ctx)?],
        vec![
            r_family(p, &p.nu, None, ctx)?,
            r_family(p, &-p.nu.clone(), None, ctx)?,
        ],
    ))
}

/// ν = 0: a^{−2μ} Σ (−1)^k (μ)_k/k! F_k(0)[ζ(−γ−2k)(log(2a/b) − γ₀ + F*) + ζ′(−γ−2k)] a^{−2k}.
fn nu_zero_family<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Family<T> {
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let shift = log_shift(p, &w);
    let (mu, g) = (p.mu.clone(), p.gamma_exp.clone());
    Family::new("nu=0 log series", move |k| {
        let z = -g.clone() - rat(2) * k_rat(k);
        let power = rat(-2) * &mu - rat(2) * k_rat(k);
        let fs = fstar_site::<T>(FStarSite::NuZero, k, &mu, &BigRational::zero(), &chi, &w)?;
        let a_k = sgn::<T>(k) * &pochhammer_over_factorial::<T>(&mu, k, &w) * &fs.norm;
        let zeta: T = zeta_rational(&z, &w)?;
        let dzeta: T = zeta_deriv_rational(&z, &w)?;
        let c0 = a_k.clone() * &(zeta.clone() * &(shift.clone() + &fs.value) + &dzeta);
        let c1 = a_k * &zeta;
        Ok(Some(Term::new(power, vec![cplx::re(c0), cplx::re(c1)])))
    })
}

/// ν = 0, γ not a negative odd integer.
pub fn nu_zero<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    if !matches!(regime, Regime::NuZero | Regime::NuZeroEven { .. }) {
        return Err(mismatch("nu-zero", &regime));
    }
    Ok(AsymptoticSeries::new(
        regime.clone(),
        vec![h_term(p, &regime, ctx)?],
        vec![nu_zero_family(p, ctx)],
    ))
}

/// ν = 0, γ = 2m: only ζ′(−2m−2k) survives, plus a log term when m = 0.
pub fn nu_zero_even<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    let Regime::NuZeroEven { m } = regime else {
        return Err(mismatch("nu-zero-even", &regime));
    };
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let mut constant = vec![h_term(p, &regime, ctx)?];
    if m == 0 {
        let half = T::from_ratio(-1, 2, &w);
        constant.push(Term::new(
            rat(-2) * &p.mu,
            vec![cplx::re(half.clone() * &log_shift(p, &w)), cplx::re(half)],
        ));
    }
    let mu = p.mu.clone();
    let fam = Family::new("nu=0 even series", move |k| {
        let z = -rat(2 * m as i64) - rat(2) * k_rat(k);
        let f = FPoly::new(k, &mu, &BigRational::zero())?.eval(&chi, &w);
        let dzeta: T = zeta_deriv_rational(&z, &w)?;
        let c = sgn::<T>(k) * &pochhammer_over_factorial::<T>(&mu, k, &w) * &f * &dzeta;
        Ok(Some(Term::real(rat(-2) * &mu - rat(2) * k_rat(k), c)))
    });
    Ok(AsymptoticSeries::new(regime, constant, vec![fam]))
}

/// ½a^{1−2μ}χ^{−1/2} Σ (−1)^k (μ)_k/k! ζ(1−γ−2k) a^{−2k}.
fn nu_one_plain_family<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Family<T> {
    let w = wctx(ctx);
    let pre = T::one() / &(p.chi_at(&w).sqrt() * &T::from_i64(2, &w));
    let (mu, g) = (p.mu.clone(), p.gamma_exp.clone());
    Family::new("nu=1 plain series", move |k| {
        let z = rat(1) - &g - rat(2) * k_rat(k);
        if z.is_one() {
            return Err(Error::ZetaPoleHit { k });
        }
        let zeta: T = zeta_rational(&z, &w)?;
        let c = pre.clone() * &sgn::<T>(k) * &pochhammer_over_factorial::<T>(&mu, k, &w) * &zeta;
        Ok(Some(Term::real(rat(1) - rat(2) * &mu - rat(2) * k_rat(k), c)))
    })
}

/// a^{−1−2μ}χ^{1/2} Σ (−1)^{k+1} (μ)_k/k! F_k(1)[ζ(L − γ₀ + ½ + F*) + ζ′] a^{−2k}, at −γ−1−2k.
fn nu_one_log_family<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Family<T> {
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let root = chi.sqrt();
    let shift = log_shift(p, &w) + &T::from_ratio(1, 2, &w);
    let (mu, g) = (p.mu.clone(), p.gamma_exp.clone());
    Family::new("nu=1 log series", move |k| {
        let z = -g.clone() - rat(1) - rat(2) * k_rat(k);
        if z.is_one() {
            return Err(Error::ZetaPoleHit { k });
        }
        let fs = fstar_site::<T>(FStarSite::NuOne, k, &mu, &rat(1), &chi, &w)?;
        let a_k = -sgn::<T>(k) * &pochhammer_over_factorial::<T>(&mu, k, &w) * &root * &fs.norm;
        let zeta: T = zeta_rational(&z, &w)?;
        let dzeta: T = zeta_deriv_rational(&z, &w)?;
        let c0 = a_k.clone() * &(zeta.clone() * &(shift.clone() + &fs.value) + &dzeta);
        let c1 = a_k * &zeta;
        Ok(Some(Term::new(
            rat(-1) - rat(2) * &mu - rat(2) * k_rat(k),
            vec![cplx::re(c0), cplx::re(c1)],
        )))
    })
}

/// ν = 1, γ not a non-positive even integer.
pub fn nu_one<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    if !matches!(regime, Regime::NuOne | Regime::NuOneOdd { .. }) {
        return Err(mismatch("nu-one", &regime));
    }
    Ok(AsymptoticSeries::new(
        regime.clone(),
        vec![h_term(p, &regime, ctx)?],
        vec![nu_one_plain_family(p, ctx), nu_one_log_family(p, ctx)],
    ))
}

/// ν = 1, γ = 2m+1: the plain series collapses to a single term at m = 0
/// and the log series to ζ′(−2m−2−2k).
pub fn nu_one_odd<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    let Regime::NuOneOdd { m } = regime else {
        return Err(mismatch("nu-one-odd", &regime));
    };
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let root = chi.sqrt();
    let mut constant = vec![h_term(p, &regime, ctx)?];
    if m == 0 {
        let c = -(T::one() / &(root.clone() * &T::from_i64(4, &w)));
        constant.push(Term::real(rat(1) - rat(2) * &p.mu, c));
    }
    let mu = p.mu.clone();
    let fam = Family::new("nu=1 odd series", move |k| {
        let z = -rat(2 * m as i64 + 2) - rat(2) * k_rat(k);
        let f = FPoly::new(k, &mu, &rat(1))?.eval(&chi, &w);
        let dzeta: T = zeta_deriv_rational(&z, &w)?;
        let c = -sgn::<T>(k) * &pochhammer_over_factorial::<T>(&mu, k, &w) * &root * &f * &dzeta;
        Ok(Some(Term::real(rat(-1) - rat(2) * &mu - rat(2) * k_rat(k), c)))
    });
    Ok(AsymptoticSeries::new(regime, constant, vec![fam]))
}

/// γ ± ν = −(2m+1), ν and μ non-integer.
pub fn double_pole<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    let Regime::DoublePole { m, sign } = regime else {
        return Err(mismatch("double-pole", &regime));
    };
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let nu_s = sign.apply(&p.nu);
    let m_us = m as usize;
    let h_hat = h_at_one(p, &regime, &w)?;
    // c = (−1)^m χ^{ν′/2} Γ(−ν′) (μ)_m F_m(ν′) / (4 m!)
    let f_m = FPoly::new(m_us, &p.mu, &nu_s)?.eval(&chi, &w);
    let c = sgn::<T>(m_us) * &chi_pow(&chi, &(&nu_s / rat(2)), &w) * &gamma_q::<T>(&-nu_s.clone(), &w)?
        * &pochhammer_over_factorial::<T>(&p.mu, m_us, &w)
        * &f_m
        / &T::from_i64(4, &w);
    let fstar = fstar_site::<T>(FStarSite::TerminatingShift, m_us, &p.mu, &nu_s, &chi, &w)?.value;
    let mp1 = T::from_i64(m as i64 + 1, &w);
    let mmu = T::from_rational(&(&p.mu + rat(m as i64)), &w);
    let two = T::from_i64(2, &w);
    let bracket0 = two.clone() * &euler_gamma::<T>(&w) + &digamma(&mp1, &w)? - &digamma(&mmu, &w)? + &fstar;
    let c0 = h_hat + cplx::re(c.clone() * &bracket0);
    let c1 = cplx::re(c * &two);
    let constant = Term::new(&p.gamma_exp - rat(2) * &p.mu + rat(1), vec![c0, c1]);
    Ok(AsymptoticSeries::new(
        regime,
        vec![constant],
        vec![
            r_family(p, &nu_s, Some(m_us), ctx)?,
            r_family(p, &-nu_s.clone(), None, ctx)?,
        ],
    ))
}

/// Coefficients (c₋₁, c₀) of the double pole at s = 1 of H₁ + H₂(s, ν′) for
/// μ = 1, γ + ν′ = −1.
pub fn coincident_laurent<T: Real>(p: &SeriesParams<T>, sign: Sign, ctx: &PrecisionCtx) -> Result<(T, T)> {
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let nu_s = sign.apply(&p.nu);
    let nu_t = T::from_rational(&nu_s, &w);
    let one = T::one().at(&w);
    let cm1 = chi_pow(&chi, &(&nu_s / rat(2)), &w) * &gamma_q::<T>(&-nu_s.clone(), &w)? / &T::from_i64(2, &w);
    // F(χ) = 1 − χ^{−ν′/2} Γ(1+ν′) J_ν′(b)
    let j = bessel_j(&nu_t, &p.b_at(&w), &w)?;
    let f = one.clone() - &(chi_pow(&chi, &(-nu_s.clone() / rat(2)), &w) * &gamma_real(&(one.clone() + &nu_t), &w)? * &j);
    let fstar = fstar_site::<T>(FStarSite::UnitUpper, 0, &rat(1), &nu_s, &chi, &w)?.value;
    let brace = digamma(&T::from_i64(2, &w), &w)? + &digamma(&(-one - &nu_t), &w)? - &chi.ln() + &fstar;
    let c0 = cm1.clone() * &f * &brace * &T::from_ratio(COINCIDENT_C0_SIGN, 2, &w);
    Ok((cm1, c0))
}

/// μ = 1, γ ± ν = −1, ν non-integer.
pub fn coincident_double_pole<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    let Regime::CoincidentDoublePole { sign } = regime else {
        return Err(mismatch("coincident-double-pole", &regime));
    };
    let w = wctx(ctx);
    let nu_s = sign.apply(&p.nu);
    let h2 = h_at_one(p, &regime, &w)?;
    let (cm1, c0) = coincident_laurent(p, sign, ctx)?;
    let k0 = h2 + cplx::re(cm1.clone() * &euler_gamma::<T>(&w) + &c0);
    let constant = Term::new(&p.gamma_exp - rat(1), vec![k0, cplx::re(cm1)]);
    Ok(AsymptoticSeries::new(
        regime,
        vec![constant],
        vec![
            r_family(p, &nu_s, Some(0), ctx)?,
            r_family(p, &-nu_s.clone(), None, ctx)?,
        ],
    ))
}

/// Laurent coefficients (h₋₂, h₋₁, h₀) of H at s = 1 for μ = 1, ν = 0, γ = −1.
pub fn treble_laurent<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<[T; 3]> {
    let w = wctx(ctx);
    let chi = p.chi_at(&w);
    let b = p.b_at(&w);
    let g0 = euler_gamma::<T>(&w);
    let half = T::from_ratio(1, 2, &w);
    let one = T::one().at(&w);
    let lchi = chi.ln();
    let a1 = one.clone() - &g0 - &(half.clone() * &lchi);
    let a2 = T::from_ratio(3, 4, &w) - &g0 + &(half.clone() * &g0 * &g0)
        + &(T::pi(&w) * &T::pi(&w) / &T::from_i64(24, &w))
        + &(half.clone() * &lchi * &(g0.clone() - &one + &(lchi.clone() / &T::from_i64(4, &w))));
    let f1 = fstar_site::<T>(FStarSite::TreblePoleFirst, 0, &rat(1), &BigRational::zero(), &chi, &w)?.value;
    let f2 = fstar_site::<T>(FStarSite::TreblePoleSecond, 0, &rat(1), &BigRational::zero(), &chi, &w)?.value;
    let j0 = bessel_j(&T::zero().at(&w), &b, &w)?;
    let y0 = bessel_y0(&b, &w)?;
    let om = one.clone() - &j0;
    let hm1 = om.clone() * &(a1.clone() + &f1) - &(half * &T::pi(&w) * &y0);
    let h0 = om * &(a2 + &(a1 * &f1) + &f2) - &(T::pi(&w) * &T::pi(&w) * &j0 / &T::from_i64(24, &w));
    Ok([one, hm1, h0])
}

/// μ = 1, ν = 0, γ = −1.
pub fn treble_pole<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    if regime != Regime::TreblePole {
        return Err(mismatch("treble-pole", &regime));
    }
    let w = wctx(ctx);
    let [hm2, hm1, h0] = treble_laurent(p, ctx)?;
    let g0 = euler_gamma::<T>(&w);
    // h₋₂B₂ + h₋₁B₁ + h₀, B₁ = L + γ₀, B₂ = ½L² + γ₀L − γ₁
    let c0 = h0 + &(hm1.clone() * &g0) - &(hm2.clone() * &stieltjes1::<T>(&w));
    let c1 = hm1 + &(hm2.clone() * &g0);
    let c2 = hm2 * &T::from_ratio(1, 2, &w);
    let constant = Term::new(rat(-2), vec![cplx::re(c0), cplx::re(c1), cplx::re(c2)]);
    let chi = p.chi_at(&w);
    let shift = log_shift(p, &w);
    let fam = Family::new("treble-pole log series", move |k| {
        if k == 0 {
            return Ok(None);
        }
        let z = rat(1) - rat(2) * k_rat(k);
        let fs = fstar_site::<T>(FStarSite::UnitMuNuZero, k, &rat(1), &BigRational::zero(), &chi, &w)?;
        let a_k = sgn::<T>(k) * &fs.norm;
        let zeta: T = zeta_rational(&z, &w)?;
        let dzeta: T = zeta_deriv_rational(&z, &w)?;
        let c0 = a_k.clone() * &(zeta.clone() * &(shift.clone() + &fs.value) + &dzeta);
        Ok(Some(Term::new(
            rat(-2) - rat(2) * k_rat(k),
            vec![cplx::re(c0), cplx::re(a_k * &zeta)],
        )))
    });
    Ok(AsymptoticSeries::new(regime, vec![constant], vec![fam]))
}

/// μ = 2, γ + ν = −1: S² = (1/2a²){(b/a)S¹_{ν+1,γ+1} − (ν + a∂_a)S¹_{ν,γ}}.
pub fn mu_two_lift<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    if regime != Regime::MuTwoLift {
        return Err(mismatch("mu-two-lift", &regime));
    }
    let w = wctx(ctx);
    let upper = series(&p.with(rat(1), &p.nu + rat(1), &p.gamma_exp + rat(1)), ctx)?;
    let lower = series(&p.with(rat(1), p.nu.clone(), p.gamma_exp.clone()), ctx)?;
    let hb = p.b_at(&w) / &T::from_i64(2, &w);
    let upper = upper.map(regime.clone(), move |t| t.scaled_real(&hb).shifted(&rat(-3)));
    let nu = T::from_rational(&p.nu, &w);
    let lower = lower.map(regime.clone(), move |t| {
        let d = t.a_deriv(&w);
        let lead = t.scaled_real(&nu);
        lead.plus(&d).scaled_real(&T::from_ratio(-1, 2, &w)).shifted(&rat(-2))
    });
    Ok(upper.joined(lower, regime))
}

/// ν = n+2 ≥ 2: S_{n+2,γ} = S_{n,γ} + (2(n+1)a/b) S_{n+1,γ−1}.
pub fn recurrence<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    let Regime::RecurrenceReduce { nu } = regime else {
        return Err(mismatch("recurrence", &regime));
    };
    let w = wctx(ctx);
    let n = nu as i64 - 2;
    let lower = series(&p.with(p.mu.clone(), rat(n), p.gamma_exp.clone()), ctx)?;
    let side = series(&p.with(p.mu.clone(), rat(n + 1), &p.gamma_exp - rat(1)), ctx)?;
    let f = T::from_i64(2 * (n + 1), &w) / &p.b_at(&w);
    let side = side.map(regime.clone(), move |t| t.scaled_real(&f).shifted(&rat(1)));
    Ok(lower.joined(side, regime))
}

/// The expansion for whatever regime the parameters fall in.
pub fn series<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    match classify(p) {
        Regime::Generic => simple_poles(p, ctx),
        Regime::NuZero => nu_zero(p, ctx),
        Regime::NuZeroEven { .. } => nu_zero_even(p, ctx),
        Regime::NuOne => nu_one(p, ctx),
        Regime::NuOneOdd { .. } => nu_one_odd(p, ctx),
        Regime::DoublePole { .. } => double_pole(p, ctx),
        Regime::CoincidentDoublePole { .. } => coincident_double_pole(p, ctx),
        Regime::TreblePole => treble_pole(p, ctx),
        Regime::MuTwoLift => mu_two_lift(p, ctx),
        Regime::RecurrenceReduce { .. } => recurrence(p, ctx),
        Regime::Unsupported(why) => Err(Error::Unsupported(why)),
    }
}

/// Σ (−1)^{n−1} …: R̃ families directly for simple poles, otherwise
/// S(a) − 2^{1+γ−2μ} S(a/2) applied termwise.
pub fn alternating<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let regime = classify(p);
    if regime == Regime::Generic {
        return Ok(AsymptoticSeries::new(
            regime,
            vec![],
            vec![
                alternating_r_family(p, &p.nu, ctx)?,
                alternating_r_family(p, &-p.nu.clone(), ctx)?,
            ],
        ));
    }
    alternating_by_halving(p, ctx)
}

/// The alternating series through S(a) − 2^{1+γ−2μ} S(a/2), for any regime.
pub fn alternating_by_halving<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let w = wctx(ctx);
    let s = series(p, ctx)?;
    let e = rat(1) + &p.gamma_exp - rat(2) * &p.mu;
    let regime = s.regime.clone();
    Ok(s.map(regime, move |t| t.minus_halved(&e, &w)))
}

/// Σ n^γ K′_ν(nb/a)/(n²+a²)^μ = −½(S_{|ν−1|,γ} + S_{ν+1,γ}).
pub fn derivative<T: Real>(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<AsymptoticSeries<T>> {
    let w = wctx(ctx);
    let lo = p.with(p.mu.clone(), (&p.nu - rat(1)).abs(), p.gamma_exp.clone());
    let hi = p.with(p.mu.clone(), &p.nu + rat(1), p.gamma_exp.clone());
    for side in [&lo, &hi] {
        let r = classify(side);
        if !r.is_supported() {
            return Err(mismatch("supported neighbouring orders", &r));
        }
    }
    let regime = classify(p);
    let half = T::from_ratio(-1, 2, &w);
    let lo = series(&lo, ctx)?;
    let hi = series(&hi, ctx)?;
    Ok(lo
        .joined(hi, regime.clone())
        .map(regime, move |t| t.scaled_real(&half)))
}

/// Residue at s = 1 of H(s)ζ(s)a^{γ−2μ+s} for the given kernel part, from a
/// numerical Laurent expansion of the kernel; poles up to order three.
pub fn residue_by_laurent<T: Real>(
    p: &SeriesParams<T>,
    part: Part,
    a: &num_complex::Complex<T>,
    ctx: &PrecisionCtx,
) -> Result<num_complex::Complex<T>> {
    let w = wctx(ctx);
    let kernel = MellinKernel::from_params(p, &w);
    let one = cplx::re(T::one().at(&w));
    let h = kernel.laurent(&one, part, &[-2, -1, 0])?;
    let la = cplx::ln(&cplx::at(a, &w));
    let g0 = cplx::re(euler_gamma::<T>(&w));
    let g1 = cplx::re(stieltjes1::<T>(&w));
    // ζ(1+ε) a^{1+ε} = (a/ε)(1 + (γ₀ + L)ε + (½L² + γ₀L − γ₁)ε² + …)
    let b1 = la.clone() + g0.clone();
    let b2 = la.clone() * la.clone() * cplx::re(T::from_ratio(1, 2, &w)) + g0 * la.clone() - g1;
    let r = h[0].clone() * b2 + h[1].clone() * b1 + h[2].clone();
    let p_exp = T::from_rational(&(&p.gamma_exp - rat(2) * &p.mu + rat(1)), &w);
    Ok(cplx::at(&(r * cplx::exp(&cplx::scale(&la, &p_exp))), ctx))
}
