//! The Mellin transform
//!
//! H(s) = ∫₀^∞ x^{γ+s−1} K_ν(bx) (1+x²)^{−μ} dx = H₁(s,ν) + H₂(s,ν) + H₂(s,−ν)
//!
//! in closed form, its regular values at removable singularities, Laurent
//! data at genuine poles, and a quadrature oracle for the strip
//! Re(γ+s) > ν.

pub mod quad;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::expansion::regime::{classify, integer_nu, Regime, SeriesParams, Sign};
use crate::hyp::{hyp1f2_reg_complex, rat};
use crate::scalars::cplx;
use crate::scalars::gamma::{gamma_fn, gamma_real};
use crate::scalars::{PrecisionCtx, Real};

pub use quad::{mellin_quadrature, MellinQuadrature};

/// Apparent singularities closer than this (in s) are evaluated through a
/// circle mean instead of the closed form.
const APPARENT_RADIUS: f64 = 0.05;
/// Poles within this distance of a Laurent centre count as part of it.
const CENTRE_CLUSTER: f64 = 1e-3;
const CIRCLE_GUARD: u32 = 8;

/// A piece of H(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// H₁ + H₂(ν) + H₂(−ν).
    Full,
    /// H₁ alone.
    First,
    /// H₂(s, ±ν).
    Second(Sign),
    /// H with H₂(s, ±ν) removed, i.e. H₁ + H₂(s, ∓ν).
    Without(Sign),
}

/// H(s) for fixed exact μ, ν, γ and real b.
///
/// ν may carry either sign here; H is even in ν.
#[derive(Debug, Clone)]
pub struct MellinKernel<T> {
    mu: BigRational,
    nu: BigRational,
    gamma_exp: BigRational,
    b: T,
    ctx: PrecisionCtx,
}

fn c<T: Real>(x: T) -> Complex<T> {
    cplx::re(x)
}

fn near_pole(what: &'static str, ctx: &PrecisionCtx) -> Error {
    Error::NearPole {
        what,
        threshold: 10f64.powi(-(ctx.digits as i32 / 4)),
    }
}

impl<T: Real> MellinKernel<T> {
    pub fn new(
        mu: BigRational,
        nu: BigRational,
        gamma_exp: BigRational,
        b: T,
        ctx: &PrecisionCtx,
    ) -> Self {
        MellinKernel {
            mu,
            nu,
            gamma_exp,
            b,
            ctx: *ctx,
        }
    }

    pub fn from_params(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Self {
        Self::new(p.mu.clone(), p.nu.clone(), p.gamma_exp.clone(), p.b.clone(), ctx)
    }

    pub fn ctx(&self) -> &PrecisionCtx {
        &self.ctx
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }

    pub fn nu(&self) -> &BigRational {
        &self.nu
    }

    pub fn gamma_exp(&self) -> &BigRational {
        &self.gamma_exp
    }

    /// Same kernel with another ν and precision.
    pub fn with_nu(&self, nu: BigRational, ctx: &PrecisionCtx) -> Self {
        Self::new(self.mu.clone(), nu, self.gamma_exp.clone(), self.b.clone(), ctx)
    }

    fn chi(&self, w: &PrecisionCtx) -> T {
        let b = self.b.at(w);
        b.clone() * &b / &T::from_i64(4, w)
    }

    fn q(&self, x: &BigRational, w: &PrecisionCtx) -> T {
        T::from_rational(x, w)
    }

    /// λ_{±ν}(s) = (γ + s ± ν)/2.
    pub fn lambda(&self, s: &Complex<T>, sign: Sign) -> Complex<T> {
        self.lambda_at(s, sign, &self.ctx)
    }

    fn lambda_at(&self, s: &Complex<T>, sign: Sign, w: &PrecisionCtx) -> Complex<T> {
        let shift = self.q(&(&self.gamma_exp + sign.apply(&self.nu)), w);
        let half = T::from_ratio(1, 2, w);
        cplx::scale(&(cplx::at(s, w) + c(shift)), &half)
    }

    fn threshold(&self) -> T {
        T::from_i64(10, &self.ctx).powi(-(self.ctx.digits as i32 / 4))
    }

    /// H₁(s,ν); NearPole within 10^{−digits/4} of a zero of either sine.
    pub fn h1(&self, s: &Complex<T>) -> Result<Complex<T>> {
        let thr = self.threshold();
        for sign in [Sign::Plus, Sign::Minus] {
            let t = self.lambda(s, sign) - c(self.q(&self.mu, &self.ctx));
            if cplx::dist_to_integer(&t) < thr {
                return Err(near_pole("H1 (sin pi(lambda-mu))", &self.ctx));
            }
        }
        self.h1_raw(s, &self.ctx)
    }

    /// H₂(s,±ν); NearPole near zeros of sin πν or sin π(λ_{±ν}−μ).
    pub fn h2(&self, s: &Complex<T>, sign: Sign) -> Result<Complex<T>> {
        let thr = self.threshold();
        let nu = self.q(&self.nu, &self.ctx);
        if cplx::dist_to_integer(&c(nu)) < thr {
            return Err(near_pole("H2 (sin pi nu)", &self.ctx));
        }
        let t = self.lambda(s, sign) - c(self.q(&self.mu, &self.ctx));
        if cplx::dist_to_integer(&t) < thr {
            return Err(near_pole("H2 (sin pi(lambda-mu))", &self.ctx));
        }
        self.h2_raw(s, sign, &self.ctx)
    }

    /// H(s) = H₁ + H₂(ν) + H₂(−ν) by the closed forms, with the same
    /// NearPole guard.
    pub fn h(&self, s: &Complex<T>) -> Result<Complex<T>> {
        self.part(s, Part::Full)
    }

    /// A piece of H by the closed forms, guarded.
    pub fn part(&self, s: &Complex<T>, part: Part) -> Result<Complex<T>> {
        Ok(match part {
            Part::Full => self.h1(s)? + self.h2(s, Sign::Plus)? + self.h2(s, Sign::Minus)?,
            Part::First => self.h1(s)?,
            Part::Second(sg) => self.h2(s, sg)?,
            Part::Without(sg) => self.h1(s)? + self.h2(s, sg.flip())?,
        })
    }

    fn h1_raw(&self, s: &Complex<T>, w: &PrecisionCtx) -> Result<Complex<T>> {
        let s = cplx::at(s, w);
        let mu = self.q(&self.mu, w);
        let chi = self.chi(w);
        let lp = self.lambda_at(&s, Sign::Plus, w);
        let lm = self.lambda_at(&s, Sign::Minus, w);
        let sp = cplx::sin_pi(&(lp.clone() - c(mu.clone())), w);
        let sm = cplx::sin_pi(&(lm.clone() - c(mu.clone())), w);
        if cplx::abs(&sp).is_zero() || cplx::abs(&sm).is_zero() {
            return Err(Error::Pole {
                func: "H1",
                at: s.re.to_sci_string(20),
            });
        }
        let one = T::one().at(w);
        let half = T::from_ratio(1, 2, w);
        let expo = c(mu.clone()) - cplx::scale(&(s.clone() + c(self.q(&self.gamma_exp, w))), &half);
        let chipow = cplx::exp(&cplx::scale(&expo, &chi.ln()));
        let up = c(one.clone() + &mu);
        let f = hyp1f2_reg_complex(&c(mu), &(up.clone() - lp), &(up - lm), &(-chi), w);
        let pi = T::pi(w);
        let pref = pi.clone() * &pi / &T::from_i64(4, w);
        Ok(cplx::scale(&(chipow * f / (sp * sm)), &pref))
    }

    fn h2_raw(&self, s: &Complex<T>, sign: Sign, w: &PrecisionCtx) -> Result<Complex<T>> {
        let s = cplx::at(s, w);
        let mu = self.q(&self.mu, w);
        let nus = self.q(&sign.apply(&self.nu), w);
        let chi = self.chi(w);
        let l = self.lambda_at(&s, sign, w);
        let snu = nus.sin_pi(w);
        let sl = cplx::sin_pi(&(l.clone() - c(mu.clone())), w);
        if snu.is_zero() {
            return Err(Error::Pole {
                func: "H2 (integer nu)",
                at: self.nu.to_string(),
            });
        }
        if cplx::abs(&sl).is_zero() {
            return Err(Error::Pole {
                func: "H2",
                at: s.re.to_sci_string(20),
            });
        }
        let g = gamma_fn(&l, w)?;
        let gmu = gamma_real(&mu, w)?;
        let one = T::one().at(w);
        let half = T::from_ratio(1, 2, w);
        let chipow = (nus.clone() * &half * &chi.ln()).exp();
        let f = hyp1f2_reg_complex(
            &l,
            &(c(one.clone() - &mu) + l.clone()),
            &c(one + &nus),
            &(-chi),
            w,
        );
        let pi = T::pi(w);
        let pref = pi.clone() * &pi * &chipow / &(T::from_i64(4, w) * &gmu * &snu);
        Ok(cplx::scale(&(g * f / sl), &pref))
    }

    fn part_raw(&self, s: &Complex<T>, part: Part, w: &PrecisionCtx) -> Result<Complex<T>> {
        Ok(match part {
            Part::Full => {
                self.h1_raw(s, w)? + self.h2_raw(s, Sign::Plus, w)? + self.h2_raw(s, Sign::Minus, w)?
            }
            Part::First => self.h1_raw(s, w)?,
            Part::Second(sg) => self.h2_raw(s, sg, w)?,
            Part::Without(sg) => self.h1_raw(s, w)? + self.h2_raw(s, sg.flip(), w)?,
        })
    }

    /// The two lattices of real singular points of `part` near `centre`:
    /// genuine poles and removable (apparent) ones.
    fn singular_points(&self, part: Part, centre: f64, window: f64, w: &PrecisionCtx) -> (Vec<T>, Vec<T>) {
        let gamma_lattice = |sg: Sign| -> Vec<T> {
            // λ_{±ν} = −k: s = −γ ∓ ν − 2k
            let base = -(&self.gamma_exp + sg.apply(&self.nu));
            let bf = base.to_f64().unwrap_or(f64::NAN);
            let kmin = (((bf - centre - window) / 2.0).floor()).max(0.0) as i64;
            let kmax = ((bf - centre + window) / 2.0).ceil() as i64;
            (kmin..=kmax.max(kmin - 1))
                .filter(|&k| k >= 0)
                .map(|k| self.q(&(&base - rat(2 * k)), w))
                .collect()
        };
        let sin_lattice = |sg: Sign| -> Vec<T> {
            // λ_{±ν} − μ ∈ ℤ: s = 2μ − γ ∓ ν + 2j
            let base = rat(2) * &self.mu - &self.gamma_exp - sg.apply(&self.nu);
            let bf = base.to_f64().unwrap_or(f64::NAN);
            let jmin = ((centre - window - bf) / 2.0).floor() as i64;
            let jmax = ((centre + window - bf) / 2.0).ceil() as i64;
            (jmin..=jmax).map(|j| self.q(&(&base + rat(2 * j)), w)).collect()
        };
        let (p, m) = (Sign::Plus, Sign::Minus);
        match part {
            Part::Full => (
                [gamma_lattice(p), gamma_lattice(m)].concat(),
                [sin_lattice(p), sin_lattice(m)].concat(),
            ),
            Part::First => ([sin_lattice(p), sin_lattice(m)].concat(), vec![]),
            Part::Second(sg) => ([gamma_lattice(sg), sin_lattice(sg)].concat(), vec![]),
            Part::Without(sg) => (
                [gamma_lattice(sg.flip()), sin_lattice(sg)].concat(),
                sin_lattice(sg.flip()),
            ),
        }
    }

    fn nu_is_integer(&self) -> Option<i64> {
        integer_nu(&self.nu.abs())
    }

    fn nu_near_integer(&self) -> bool {
        let nu = self.q(&self.nu, &self.ctx);
        cplx::dist_to_integer(&c(nu)) < self.threshold()
    }

    /// Richardson limit in ν towards the integer n = ν:
    /// ν=0 uses f(δ), f(2δ); otherwise the symmetric means f(n±δ), f(n±2δ).
    fn nu_limit<F>(&self, f: F) -> Result<Vec<Complex<T>>>
    where
        F: Fn(&MellinKernel<T>) -> Result<Vec<Complex<T>>>,
    {
        let n = self.nu_is_integer().expect("integer nu");
        let e = self.ctx.digits.div_ceil(4);
        let w = self.ctx.raised(e + 10);
        let delta = BigRational::new(BigInt::one(), BigInt::from(10).pow(e));
        let avg = |d: &BigRational| -> Result<Vec<Complex<T>>> {
            if n == 0 {
                return f(&self.with_nu(d.clone(), &w));
            }
            let up = f(&self.with_nu(rat(n) + d, &w))?;
            let dn = f(&self.with_nu(rat(n) - d, &w))?;
            let half = T::from_ratio(1, 2, &w);
            Ok(up
                .into_iter()
                .zip(dn)
                .map(|(u, d)| cplx::scale(&(u + d), &half))
                .collect())
        };
        let a1 = avg(&delta)?;
        let a2 = avg(&(rat(2) * &delta))?;
        let four = T::from_i64(4, &w);
        let three = T::from_i64(3, &w);
        Ok(a1
            .into_iter()
            .zip(a2)
            .map(|(x, y)| cplx::at(&cplx::scale(&(cplx::scale(&x, &four) - y), &(T::one() / &three)), &self.ctx))
            .collect())
    }

    /// Value of `part` at s, continued through removable singularities.
    /// Integer ν is reached as a limit; genuine poles are errors.
    pub fn value(&self, s: &Complex<T>, part: Part) -> Result<Complex<T>> {
        if self.nu_is_integer().is_some() {
            if part != Part::Full {
                return Err(Error::Unsupported(
                    "pieces of H are undefined at integer nu; only the full kernel has a limit".into(),
                ));
            }
            return Ok(self.nu_limit(|k| Ok(vec![k.value(s, part)?]))?.remove(0));
        }
        if self.nu_near_integer() {
            return Err(near_pole("H (nu near an integer)", &self.ctx));
        }
        let centre = s.re.to_f64();
        let (poles, apparent) = self.singular_points(part, centre, 4.0, &self.ctx);
        let thr = self.threshold();
        for p in &poles {
            if cplx::abs(&(s.clone() - c(p.clone()))) < thr {
                return Err(Error::Pole {
                    func: "H",
                    at: s.re.to_sci_string(20),
                });
            }
        }
        let near_apparent = apparent
            .iter()
            .any(|p| cplx::abs(&(s.clone() - c(p.clone()))).to_f64() < APPARENT_RADIUS);
        if near_apparent {
            let r = self.circle(s, part, &[0], false)?;
            return Ok(r.into_iter().next().unwrap());
        }
        let w = self.ctx.raised(5);
        Ok(cplx::at(&self.part_raw(s, part, &w)?, &self.ctx))
    }

    /// Laurent coefficients of `part` at `centre` for the requested orders
    /// (negative orders give the principal part), from a trapezoidal
    /// contour mean. Integer ν is reached as a limit.
    pub fn laurent(&self, centre: &Complex<T>, part: Part, orders: &[i32]) -> Result<Vec<Complex<T>>> {
        if self.nu_is_integer().is_some() {
            if part != Part::Full {
                return Err(Error::Unsupported(
                    "pieces of H are undefined at integer nu; only the full kernel has a limit".into(),
                ));
            }
            return self.nu_limit(|k| k.laurent(centre, part, orders));
        }
        if self.nu_near_integer() {
            return Err(near_pole("H (nu near an integer)", &self.ctx));
        }
        self.circle(centre, part, orders, true)
    }

    fn circle(&self, centre: &Complex<T>, part: Part, orders: &[i32], allow_centre: bool) -> Result<Vec<Complex<T>>> {
        let w = self.ctx.raised(CIRCLE_GUARD);
        let centre = cplx::at(centre, &w);
        let cf = centre.re.to_f64();
        let (poles, apparent) = self.singular_points(part, cf, 6.0, &w);
        let dist = |p: &T| cplx::abs(&(centre.clone() - c(p.clone()))).to_f64();
        let mut r_true = 6.0f64;
        for p in &poles {
            let d = dist(p);
            if d < CENTRE_CLUSTER {
                if !allow_centre {
                    return Err(Error::Pole {
                        func: "H",
                        at: centre.re.to_sci_string(20),
                    });
                }
                continue;
            }
            r_true = r_true.min(d);
        }
        let app: Vec<f64> = apparent.iter().map(dist).filter(|d| *d < 2.0).collect();
        let rho0 = (r_true / 3.0).min(0.25);
        let rho = [1.0, 0.85, 0.7, 0.55, 0.4]
            .iter()
            .map(|f| rho0 * f)
            .max_by(|a, b| {
                let score = |r: f64| app.iter().map(|d| (d - r).abs() / r).fold(f64::INFINITY, f64::min);
                score(*a).partial_cmp(&score(*b)).unwrap()
            })
            .unwrap();
        let n = ((w.digits as f64 * std::f64::consts::LN_10) / (r_true / rho).ln()).ceil() as usize + 10;
        let rho_t = T::from_f64(rho, &w);
        let pi = T::pi(&w);
        let nn = T::from_i64(n as i64, &w);
        let mut acc: Vec<Complex<T>> = vec![c(T::zero().at(&w)); orders.len()];
        for j in 0..n {
            let theta = pi.clone() * &T::from_i64(2 * j as i64 + 1, &w) / &nn;
            let z = Complex::new(rho_t.clone() * &theta.cos(), rho_t.clone() * &theta.sin());
            let fz = self.part_raw(&(centre.clone() + z.clone()), part, &w)?;
            for (o, a) in orders.iter().zip(acc.iter_mut()) {
                // f(z) z^{−o}
                let zp = cplx::exp(&cplx::scale(&cplx::ln(&z), &T::from_i64(-(*o as i64), &w)));
                *a = a.clone() + fz.clone() * zp;
            }
        }
        Ok(acc
            .into_iter()
            .map(|a| cplx::at(&cplx::scale(&a, &(T::one() / &nn)), &self.ctx))
            .collect())
    }

    /// The apparent singular point s_k = 2μ − γ ∓ ν + 2k where λ_{±ν} − μ = k.
    pub fn apparent_point(&self, k: i64, sign: Sign) -> BigRational {
        rat(2) * &self.mu - &self.gamma_exp - sign.apply(&self.nu) + rat(2 * k)
    }

    /// Q(s) = (4/π²) sin π(λ_{±ν}−μ) {H₁(s,ν) + H₂(s,±ν)}, in the form
    /// with the vanishing sine cancelled, so it is finite at s_k.
    pub fn q_fn(&self, s: &Complex<T>, sign: Sign) -> Result<Complex<T>> {
        self.q_raw(s, sign, &self.ctx)
    }

    fn q_raw(&self, s: &Complex<T>, sign: Sign, w: &PrecisionCtx) -> Result<Complex<T>> {
        let s = cplx::at(s, w);
        let mu = self.q(&self.mu, w);
        let nus = self.q(&sign.apply(&self.nu), w);
        let chi = self.chi(w);
        let one = T::one().at(w);
        let half = T::from_ratio(1, 2, w);
        let l = self.lambda_at(&s, sign, w);
        let lo = self.lambda_at(&s, sign.flip(), w);
        let so = cplx::sin_pi(&(lo.clone() - c(mu.clone())), w);
        let expo = c(mu.clone()) - cplx::scale(&(s.clone() + c(self.q(&self.gamma_exp, w))), &half);
        let chipow = cplx::exp(&cplx::scale(&expo, &chi.ln()));
        let up = c(one.clone() + &mu);
        let f1 = hyp1f2_reg_complex(&c(mu.clone()), &(up.clone() - l.clone()), &(up - lo), &(-chi.clone()), w);
        let t1 = chipow * f1 / so;
        let g = gamma_fn(&l, w)?;
        let gmu = gamma_real(&mu, w)?;
        let f2 = hyp1f2_reg_complex(
            &l,
            &(c(one.clone() - &mu) + l.clone()),
            &c(one + &nus),
            &(-chi.clone()),
            w,
        );
        let pref = (nus.clone() * &half * &chi.ln()).exp() / &(gmu * &nus.sin_pi(w));
        Ok(cplx::at(&(t1 + cplx::scale(&(g * f2), &pref)), &self.ctx))
    }

    /// |Q(s_k)| at the apparent singular point of index k on the ±ν branch,
    /// extrapolated from s_k ± ε and s_k ± 2ε with ε = 10^{−digits/3}.
    pub fn q_check(&self, k: i64, sign: Sign) -> Result<T> {
        let sk = self.q(&self.apparent_point(k, sign), &self.ctx.raised(10));
        self.q_check_at(&c(sk), sign)
    }

    pub fn q_check_at(&self, sk: &Complex<T>, sign: Sign) -> Result<T> {
        let w = self.ctx.raised(10);
        let e = self.ctx.digits.div_ceil(3) as i32;
        let eps = T::from_i64(10, &w).powi(-e);
        let sk = cplx::at(sk, &w);
        let half = T::from_ratio(1, 2, &w);
        let avg = |h: &T| -> Result<Complex<T>> {
            let a = self.q_raw(&(sk.clone() + c(h.clone())), sign, &w)?;
            let b = self.q_raw(&(sk.clone() - c(h.clone())), sign, &w)?;
            Ok(cplx::scale(&(a + b), &half))
        };
        let a1 = avg(&eps)?;
        let a2 = avg(&(eps.clone() + &eps))?;
        let r = cplx::scale(&(cplx::scale(&a1, &T::from_i64(4, &w)) - a2), &(T::one() / &T::from_i64(3, &w)));
        Ok(cplx::abs(&r).at(&self.ctx))
    }
}

/// The constant taken from the kernel at s = 1 by each regime:
///
/// * simple-pole regimes (including integer ν): H(1), continued where needed;
/// * double pole with ν non-integer, μ non-integer: Ĥ(1) = H₁(1) + H₂(1, ∓ν);
/// * coincident double pole (μ = 1): H₂(1, ∓ν);
/// * treble pole: the constant Laurent coefficient of H at s = 1.
///
/// Recurrence and lifted regimes never read H(1) directly.
pub fn h_at_one<T: Real>(params: &SeriesParams<T>, regime: &Regime, ctx: &PrecisionCtx) -> Result<Complex<T>> {
    let found = classify(params);
    if found != *regime {
        return Err(Error::RegimeMismatch {
            expected: regime.tag(),
            found: found.tag(),
        });
    }
    let k = MellinKernel::from_params(params, ctx);
    let one = c(T::one().at(ctx));
    match regime {
        Regime::Generic | Regime::NuZero | Regime::NuZeroEven { .. } | Regime::NuOne | Regime::NuOneOdd { .. } => {
            k.value(&one, Part::Full)
        }
        Regime::DoublePole { sign, .. } => k.value(&one, Part::Without(*sign)),
        Regime::CoincidentDoublePole { sign } => k.value(&one, Part::Second(sign.flip())),
        Regime::TreblePole => Ok(k.laurent(&one, Part::Full, &[0])?.remove(0)),
        Regime::RecurrenceReduce { .. } | Regime::MuTwoLift => Err(Error::Unsupported(format!(
            "regime {} is assembled from other instances and has no constant of its own",
            regime.tag()
        ))),
        Regime::Unsupported(why) => Err(Error::Unsupported(why.clone())),
    }
}
