//! Self-checks over the whole library, grouped into named suites. Each
//! check reports the measured discrepancy next to its tolerance; tolerances
//! scale with the working precision where the check is precision-limited.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::expansion::engines::{nu_one, nu_zero, r_family};
use crate::expansion::{AsymptoticSeries, Regime, SeriesParams, Sign, Truncation};
use crate::hyp::{f_poly, fstar_site, hyp1f2, hyp1f2_first_order, FStarSite};
use crate::mellin::{MellinKernel, MellinQuadrature, Part};
use crate::oracle::{direct_sum, direct_sum_alternating, direct_sum_derivative};
use crate::scalars::{cplx, stieltjes1, zeta, PrecisionCtx, Real};
use crate::tables::{compare, layout};
use crate::{BigComplex, BigReal};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(label: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            label: label.into(),
            measured,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.measured.is_finite() && self.measured <= self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Set when the suite could not run to completion.
    pub error: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Check::passed)
    }
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub run: fn(&PrecisionCtx) -> Result<Vec<Check>>,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "kernel-identity",
        about: "closed-form Mellin kernel vs quadrature on a 5x5 grid",
        run: kernel_identity,
    },
    Suite {
        name: "apparent-singularities",
        about: "Q(s) vanishes at the first six apparent singular points, both branches",
        run: apparent_singularities,
    },
    Suite {
        name: "limit-continuity",
        about: "simple-pole sums at nu=eps, 1+eps vs the integer-order log forms",
        run: limit_continuity,
    },
    Suite {
        name: "error-decay",
        about: "optimal-truncation error falls with |a| and grows towards the sector edge",
        run: error_decay,
    },
    Suite {
        name: "alternating-identity",
        about: "alternating sum equals S(a) - 2^(1+gamma-2mu) S(a/2)",
        run: alternating_identity,
    },
    Suite {
        name: "bessel-identities",
        about: "order recurrence and derivative identity between direct sums",
        run: bessel_identities,
    },
    Suite {
        name: "perturbation",
        about: "first-order hypergeometric coefficients vs finite differences, O(eps) residual",
        run: perturbation,
    },
    Suite {
        name: "stieltjes",
        about: "gamma0, gamma1 vs the Laurent coefficients of zeta(1+eps)",
        run: stieltjes,
    },
];

/// Run every suite whose name contains `filter`.
pub fn run(filter: Option<&str>, ctx: &PrecisionCtx) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
        .map(|s| match (s.run)(ctx) {
            Ok(checks) => SuiteReport {
                name: s.name,
                checks,
                error: None,
            },
            Err(e) => SuiteReport {
                name: s.name,
                checks: vec![],
                error: Some(e.to_string()),
            },
        })
        .collect()
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn rel(x: &BigComplex, y: &BigComplex) -> f64 {
    (cplx::abs(&(x.clone() - y.clone())) / &cplx::abs(y)).to_f64()
}

fn rel_real(x: &BigReal, y: &BigReal) -> f64 {
    ((x.clone() - y).abs() / &y.abs()).to_f64()
}

/// 10^{−(digits − lost)}
fn digits_tol(ctx: &PrecisionCtx, lost: u32) -> f64 {
    10f64.powi(-(ctx.digits.saturating_sub(lost) as i32))
}

fn params(mu: BigRational, nu: BigRational, g: BigRational, b: i64, ctx: &PrecisionCtx) -> Result<SeriesParams<BigReal>> {
    SeriesParams::new(mu, nu, g, BigReal::from_i64(b, ctx))
}

fn random_rational(rng: &mut ChaCha8Rng, lo: f64, hi: f64, avoid_integer: bool) -> BigRational {
    loop {
        let den = rng.gen_range(2..13i64);
        let num = rng.gen_range((lo * den as f64).ceil() as i64..=(hi * den as f64).floor() as i64);
        let r = q(num, den);
        if !(avoid_integer && r.is_integer()) {
            return r;
        }
    }
}

/// r·e^{iπp/d}
fn polar(r: i64, p: i64, d: i64, ctx: &PrecisionCtx) -> BigComplex {
    let t = BigReal::from_ratio(p, d, ctx);
    let r = BigReal::from_i64(r, ctx);
    Complex::new(r.clone() * &t.cos_pi(ctx), r * &t.sin_pi(ctx))
}

fn kernel_identity(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let (mu, nu, g) = (q(1, 1), q(2, 3), q(1, 1));
    let b = BigReal::from_i64(1, ctx);
    let k = MellinKernel::new(mu.clone(), nu.clone(), g.clone(), b.clone(), ctx);
    let quad = MellinQuadrature::new(mu, nu, g, b, ctx)?;
    let mut worst = 0f64;
    for (sp, sq) in [(-1, 4), (1, 2), (1, 1), (7, 4), (3, 1)] {
        for tau in -2..=2i64 {
            let s = Complex::new(BigReal::from_ratio(sp, sq, ctx), BigReal::from_ratio(tau, 2, ctx));
            worst = worst.max(rel(&k.value(&s, Part::Full)?, &quad.integrate(&s)?));
        }
    }
    Ok(vec![Check::new("max relative error over the grid", worst, digits_tol(ctx, 20))])
}

fn apparent_singularities(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for _ in 0..5 {
        let mu = random_rational(&mut rng, 0.2, 3.0, true);
        let nu = random_rational(&mut rng, 0.1, 2.9, true);
        let g = random_rational(&mut rng, -2.0, 2.0, false);
        let b = rng.gen_range(1..4i64);
        let k = MellinKernel::new(mu.clone(), nu.clone(), g.clone(), BigReal::from_i64(b, ctx), ctx);
        let mut worst = 0f64;
        for kk in -3..=2i64 {
            for sg in [Sign::Plus, Sign::Minus] {
                worst = worst.max(k.q_check(kk, sg)?.to_f64());
            }
        }
        out.push(Check::new(
            format!("mu={mu} nu={nu} gamma={g} b={b}"),
            worst,
            digits_tol(ctx, 15),
        ));
    }
    Ok(out)
}

fn limit_continuity(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let a = cplx::re(BigReal::from_i64(6, ctx));
    let eps = BigRational::new(BigInt::from(1), BigInt::from(10u64.pow(15)));
    let (mu, g) = (q(3, 2), q(1, 2));
    let kk = 8i64;
    let mut out = Vec::new();
    for (base, shift) in [(0i64, q(-1, 2)), (1, q(-3, 2))] {
        let p = params(mu.clone(), q(base, 1), g.clone(), 1, ctx)?;
        let floor = -q(2, 1) * &mu - q(2 * kk, 1) + shift;
        let exact = if base == 0 { nu_zero(&p, ctx) } else { nu_one(&p, ctx) }?;
        let exact = AsymptoticSeries::new(exact.regime.clone(), vec![], exact.families.clone());
        let want = exact.evaluate(&a, &Truncation::PowerFloor(floor.clone()), ctx)?.value;
        let nu = q(base, 1) + &eps;
        let pe = p.with(mu.clone(), nu.clone(), g.clone());
        let lim = AsymptoticSeries::new(
            Regime::Generic,
            vec![],
            vec![r_family(&pe, &nu, None, ctx)?, r_family(&pe, &-nu, None, ctx)?],
        );
        let got = lim.evaluate(&a, &Truncation::PowerFloor(floor), ctx)?.value;
        out.push(Check::new(format!("nu={base}+1e-15, K={kk}"), rel(&got, &want), 1e-10));
    }
    Ok(out)
}

fn error_decay(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for id in [1u8, 3] {
        let l = layout(id)?;
        for column in l.columns.iter().filter(|c| c.b == 1) {
            let p = params(column.mu.clone(), column.nu.clone(), column.gamma.clone(), 1, ctx)?;
            let errs = l
                .rows
                .iter()
                .map(|r| Ok(compare(&p, &r.a(ctx), &Truncation::Auto, ctx)?.rel_error.to_f64()))
                .collect::<Result<Vec<f64>>>()?;
            let worst = errs.windows(2).map(|w| w[1] / w[0]).fold(0f64, f64::max);
            out.push(Check::new(format!("{}: max e(a_next)/e(a)", column.label), worst, 1.0));
        }
    }
    let l = layout(2)?;
    for column in &l.columns {
        let p = params(column.mu.clone(), column.nu.clone(), column.gamma.clone(), 1, ctx)?;
        let errs = l
            .rows
            .iter()
            .map(|r| Ok(compare(&p, &r.a(ctx), &Truncation::Auto, ctx)?.rel_error.to_f64()))
            .collect::<Result<Vec<f64>>>()?;
        let worst = errs.windows(2).map(|w| w[0] / w[1]).fold(0f64, f64::max);
        out.push(Check::new(format!("|a|=8, {}: max e(theta)/e(theta_next)", column.label), worst, 1.0));
    }
    Ok(out)
}

fn random_point(rng: &mut ChaCha8Rng, ctx: &PrecisionCtx) -> (BigRational, BigRational, BigRational, i64, i64, i64) {
    let mu = random_rational(rng, 0.2, 3.0, false);
    let nu = random_rational(rng, 0.1, 2.9, true);
    let g = random_rational(rng, -2.0, 2.0, false);
    let b = rng.gen_range(1..4i64);
    let r = rng.gen_range(2..9i64);
    let theta = rng.gen_range(-5..=5i64);
    let _ = ctx;
    (mu, nu, g, b, r, theta)
}

fn alternating_identity(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa17e);
    let mut out = Vec::new();
    for _ in 0..5 {
        let (mu, nu, g, b, r, theta) = random_point(&mut rng, ctx);
        let p = params(mu.clone(), nu.clone(), g.clone(), b, ctx)?;
        let a = polar(r, theta, 16, ctx);
        let half = cplx::scale(&a, &BigReal::from_ratio(1, 2, ctx));
        let e = BigReal::from_rational(&(q(1, 1) + &g - q(2, 1) * &mu), ctx);
        let f = BigReal::from_i64(2, ctx).powf(&e);
        let lhs = direct_sum_alternating(&p, &a, ctx)?.0;
        let rhs = direct_sum(&p, &a, ctx)?.0 - cplx::scale(&direct_sum(&p, &half, ctx)?.0, &f);
        out.push(Check::new(
            format!("mu={mu} nu={nu} gamma={g} b={b} a={r}e^(i{theta}pi/16)"),
            rel(&lhs, &rhs),
            digits_tol(ctx, 10),
        ));
    }
    Ok(out)
}

fn bessel_identities(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbe55);
    let mut out = Vec::new();
    for _ in 0..3 {
        let (mu, nu, g, b, r, theta) = random_point(&mut rng, ctx);
        let a = polar(r, theta, 16, ctx);
        let a_over_b = cplx::scale(&a, &(BigReal::from_i64(1, ctx) / &BigReal::from_i64(b, ctx)));
        let s = |nu: BigRational, g: BigRational| -> Result<BigComplex> {
            Ok(direct_sum(&params(mu.clone(), nu, g, b, ctx)?, &a, ctx)?.0)
        };
        // K_{n+2}(x) = K_n(x) + 2(n+1)/x K_{n+1}(x)
        for n in [0i64, 1] {
            let lhs = s(q(n + 2, 1), g.clone())?;
            let f = cplx::scale(&a_over_b, &BigReal::from_i64(2 * (n + 1), ctx));
            let rhs = s(q(n, 1), g.clone())? + f * s(q(n + 1, 1), g.clone() - q(1, 1))?;
            out.push(Check::new(
                format!("recurrence n={n}: mu={mu} gamma={g} b={b} a={r}e^(i{theta}pi/16)"),
                rel(&lhs, &rhs),
                digits_tol(ctx, 10),
            ));
        }
        // K′_ν(x) = −K_{ν−1}(x) − (ν/x) K_ν(x)
        let p = params(mu.clone(), nu.clone(), g.clone(), b, ctx)?;
        let lhs = direct_sum_derivative(&p, &a, ctx)?.0;
        let lower = (nu.clone() - q(1, 1)).abs();
        let f = cplx::scale(&a_over_b, &BigReal::from_rational(&nu, ctx));
        let rhs = -s(lower, g.clone())? - f * s(nu.clone(), g.clone() - q(1, 1))?;
        out.push(Check::new(
            format!("derivative: mu={mu} nu={nu} gamma={g} b={b} a={r}e^(i{theta}pi/16)"),
            rel(&lhs, &rhs),
            digits_tol(ctx, 10),
        ));
    }
    Ok(out)
}

fn perturbation(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let c = ctx.raised(20);
    let r = |p: i64, d: i64| BigReal::from_ratio(p, d, &c);
    let mut out = Vec::new();
    // one-sided quotients at ε and ε/10⁵: the residual must shrink by 10⁵
    let (e1, e2) = (BigReal::from_i64(10, &c).powi(-20), BigReal::from_i64(10, &c).powi(-25));
    let (al, be, ga, z) = (r(2, 7), r(5, 3), r(9, 4), r(-3, 4));
    let base = hyp1f2(&al, &be, &ga, &z, &c)?;
    for slot in 0..3 {
        let zero = r(0, 1);
        let mut e = [zero.clone(), zero.clone(), zero];
        e[slot] = r(1, 1);
        let lin = hyp1f2_first_order(&al, &be, &ga, &e[0], &e[1], &e[2], &z, &c)?;
        let resid = |h: &BigReal| -> Result<f64> {
            let mut p = [al.clone(), be.clone(), ga.clone()];
            p[slot] = p[slot].clone() + h;
            let fd = (hyp1f2(&p[0], &p[1], &p[2], &z, &c)? - &base) / h;
            Ok((fd - &lin).abs().to_f64())
        };
        let (r1, r2) = (resid(&e1)?, resid(&e2)?);
        out.push(Check::new(format!("hypergeometric slot {slot}: residual at eps=1e-25"), r2, 1e-23));
        out.push(Check::new(
            format!("hypergeometric slot {slot}: |ratio/1e5 - 1|"),
            (r1 / r2 / 1e5 - 1.0).abs(),
            0.05,
        ));
    }
    // terminating shift ₁F₂(−m+ε; 1−μ−m+ε, 1+ν; −χ)
    let (muq, nuq) = (q(8, 5), q(1, 3));
    let (mu, nu, chi) = (r(8, 5), r(1, 3), r(1, 4));
    for m in [0usize, 1, 2] {
        let s = fstar_site(FStarSite::TerminatingShift, m, &muq, &nuq, &chi, &c)?;
        let lin = s.value.clone() * &s.norm;
        let mm = BigReal::from_i64(m as i64, &c);
        let one = r(1, 1);
        let fam = |e: &BigReal| {
            hyp1f2(
                &(e.clone() - &mm),
                &(one.clone() - &mu - &mm + e),
                &(one.clone() + &nu),
                &(-chi.clone()),
                &c,
            )
        };
        let f0: BigReal = f_poly(m, &muq, &nuq, &chi, &c)?;
        let resid = |h: &BigReal| -> Result<f64> { Ok((((fam(h)? - &f0) / h) - &lin).abs().to_f64()) };
        let (h1, h2) = (BigReal::from_i64(10, &c).powi(-20), BigReal::from_i64(10, &c).powi(-22));
        let (r1, r2) = (resid(&h1)?, resid(&h2)?);
        out.push(Check::new(
            format!("terminating shift m={m}: |ratio/100 - 1|"),
            (r1 / r2 / 100.0 - 1.0).abs(),
            0.05,
        ));
    }
    Ok(out)
}

fn stieltjes(ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let w = ctx.raised(50);
    let eps = BigReal::from_i64(10, &w).powi(-21);
    let one = BigReal::from_i64(1, &w);
    // f(ε) = ζ(1+ε) − 1/ε = γ₀ − γ₁ε + O(ε²)
    let f = |e: &BigReal| -> Result<BigReal> { Ok(zeta(&(one.clone() + e), &w)? - &(one.clone() / e)) };
    let (fp, fm) = (f(&eps)?, f(&-eps.clone())?);
    let two = BigReal::from_i64(2, &w);
    let g0 = (fp.clone() + &fm) / &two;
    let g1 = -(fp - &fm) / &(two * &eps);
    Ok(vec![
        Check::new("gamma0", rel_real(&g0.at(ctx), &BigReal::euler_gamma(ctx)), 1e-40),
        Check::new("gamma1", rel_real(&g1.at(ctx), &stieltjes1::<BigReal>(ctx)), 1e-40),
    ])
}
