//! Bessel functions J_ν, Y₀ (real argument) and K_ν (complex argument).

use num_complex::Complex;
use num_traits::Zero;

use super::cplx;
use super::gamma::rgamma_real;
use super::real::{PrecisionCtx, Real};
use crate::error::{Error, Result};

fn require_positive<T: Real>(x: &T, func: &str) -> Result<()> {
    if *x <= T::zero() {
        return Err(Error::Domain(format!("{func} needs x > 0, got {}", x.to_sci_string(12))));
    }
    Ok(())
}

fn ascending_guard(x: f64) -> u32 {
    5 + (x.abs() / std::f64::consts::LN_10).ceil() as u32
}

/// J_ν(x) for real x > 0 by the ascending series.
pub fn bessel_j<T: Real>(nu: &T, x: &T, ctx: &PrecisionCtx) -> Result<T> {
    require_positive(x, "bessel_j")?;
    if let Some(n) = nu.to_i64() {
        if n < 0 {
            let j = bessel_j(&(-nu.clone()), x, ctx)?;
            return Ok(if n % 2 == 0 { j } else { -j });
        }
    }
    let w = ctx.raised(ascending_guard(x.to_f64()));
    let nu = nu.at(&w);
    let x = x.at(&w);
    let half_x = x / &T::from_i64(2, &w);
    let q = -(half_x.clone() * &half_x);
    let mut term = rgamma_real(&(nu.clone() + &T::one()), &w);
    let mut sum = term.clone();
    let eps = T::epsilon(&w);
    let qf = q.to_f64().abs();
    for k in 1..100_000usize {
        let kk = T::from_i64(k as i64, &w);
        term = term * &q / &(kk.clone() * &(nu.clone() + &kk));
        sum = sum + &term;
        if (k as f64) > qf.sqrt() && term.abs() <= eps.clone() * &sum.abs() {
            break;
        }
    }
    Ok((half_x.powf(&nu) * &sum).at(ctx))
}

/// Y₀(x) for real x > 0 by its ascending series.
pub fn bessel_y0<T: Real>(x: &T, ctx: &PrecisionCtx) -> Result<T> {
    require_positive(x, "bessel_y0")?;
    let w = ctx.raised(ascending_guard(x.to_f64()));
    let x = x.at(&w);
    let j0 = bessel_j(&T::zero().at(&w), &x, &w)?;
    let half_x = x / &T::from_i64(2, &w);
    let q = half_x.clone() * &half_x;
    let mut term = T::one().at(&w);
    let mut harm = T::zero().at(&w);
    let mut sum = T::zero().at(&w);
    let eps = T::epsilon(&w);
    for k in 1..100_000usize {
        let kk = T::from_i64(k as i64, &w);
        term = -(term * &q / &(kk.clone() * &kk));
        harm = harm + &(T::one() / &kk);
        let t = term.clone() * &harm;
        sum = sum - &t;
        if (k as f64) > q.to_f64().sqrt() && t.abs() <= eps.clone() * &sum.abs() {
            break;
        }
    }
    let pi = T::pi(&w);
    let two = T::from_i64(2, &w);
    let y = two / &pi * &((half_x.ln() + &T::euler_gamma(&w)) * &j0 + &sum);
    Ok(y.at(ctx))
}

/// |z| at and beyond which K_ν uses its asymptotic expansion.
pub fn asymptotic_threshold(digits: u32) -> f64 {
    (digits as f64 * std::f64::consts::LN_10 / 2.0).max(30.0)
}

/// Reusable K_ν evaluator for a fixed order; caches the reciprocal gamma
/// values the ascending series needs.
#[derive(Debug, Clone)]
pub struct BesselK<T> {
    nu: T,
    ctx: PrecisionCtx,
    order: Option<u32>,
    /// Extra digits needed for the near-integer sin πν denominator.
    sin_guard: u32,
    rg_plus: T,
    rg_minus: T,
    max_extra: u32,
}

impl<T: Real> BesselK<T> {
    pub fn new(nu: &T, ctx: &PrecisionCtx) -> Self {
        let nu = nu.abs();
        let order = nu.to_i64().map(|n| n as u32);
        let z0 = asymptotic_threshold(ctx.digits);
        let mut sin_guard = 0;
        if order.is_none() {
            let d = (nu.clone() - &nu.round()).abs().to_f64();
            if d < 0.1 {
                sin_guard = (-d.log10()).ceil().max(0.0) as u32 + 2;
            }
        }
        let max_extra = series_extra(2.0 * z0) + sin_guard;
        let hi = ctx.raised(max_extra + 5);
        let nu_hi = nu.at(&hi);
        let (rg_plus, rg_minus) = if order.is_none() {
            (
                rgamma_real(&(T::one() + &nu_hi), &hi),
                rgamma_real(&(T::one() - &nu_hi), &hi),
            )
        } else {
            (T::zero(), T::zero())
        };
        BesselK {
            nu,
            ctx: *ctx,
            order,
            sin_guard,
            rg_plus,
            rg_minus,
            max_extra,
        }
    }

    pub fn nu(&self) -> &T {
        &self.nu
    }

    pub fn eval(&self, z: &Complex<T>) -> Result<Complex<T>> {
        if z.re <= T::zero() {
            return Err(Error::Domain(format!(
                "K_nu needs Re z > 0, got {}",
                z.re.to_sci_string(12)
            )));
        }
        let mag = cplx::abs(z).to_f64();
        if mag >= asymptotic_threshold(self.ctx.digits) {
            if let Some(v) = self.asymptotic(z) {
                return Ok(v);
            }
        }
        Ok(self.series(z))
    }

    /// Ascending-series evaluation at raised precision.
    pub fn series(&self, z: &Complex<T>) -> Complex<T> {
        let extra = (series_extra(cplx::abs(z).to_f64() + z.re.to_f64()) + self.sin_guard)
            .min(self.max_extra + self.sin_guard);
        let w = self.ctx.raised(extra + 5);
        let zw = cplx::at(z, &w);
        let v = match self.order {
            Some(n) => k_integer_series(n, &zw, &w),
            None => self.k_fractional_series(&zw, &w),
        };
        cplx::at(&v, &self.ctx)
    }

    fn k_fractional_series(&self, z: &Complex<T>, w: &PrecisionCtx) -> Complex<T> {
        let nu = self.nu.at(w);
        let half_z = cplx::scale(z, &T::from_ratio(1, 2, w));
        let q = half_z.clone() * &half_z;
        let eps = T::epsilon(w);
        let qa = cplx::abs(&q).to_f64();
        // Σ q^k / (k! Γ(±ν+k+1))
        let sum_for = |sgn_nu: T, rg0: &T| -> Complex<T> {
            let mut term = cplx::re(rg0.at(w));
            let mut sum = term.clone();
            for k in 1..1_000_000usize {
                let kk = T::from_i64(k as i64, w);
                let den = kk.clone() * &(sgn_nu.clone() + &kk);
                term = cplx::scale(&(term * &q), &(T::one() / &den));
                sum = sum + &term;
                if (k as f64) > qa.sqrt() + 1.0 && cplx::abs(&term) <= eps.clone() * &cplx::abs(&sum) {
                    break;
                }
            }
            sum
        };
        let s_plus = sum_for(nu.clone(), &self.rg_plus);
        let s_minus = sum_for(-nu.clone(), &self.rg_minus);
        let lh = cplx::ln(&half_z);
        let p_plus = cplx::exp(&cplx::scale(&lh, &nu));
        let p_minus = cplx::exp(&cplx::scale(&lh, &(-nu.clone())));
        let i_plus = p_plus * s_plus;
        let i_minus = p_minus * s_minus;
        let pi = T::pi(w);
        let f = pi / &(T::from_i64(2, w) * &nu.sin_pi(w));
        cplx::scale(&(i_minus - i_plus), &f)
    }

    /// Hankel asymptotic expansion; `None` if the terms stop decreasing
    /// before reaching working precision.
    pub fn asymptotic(&self, z: &Complex<T>) -> Option<Complex<T>> {
        let w = self.ctx.raised(5);
        let zw = cplx::at(z, &w);
        let nu = self.nu.at(&w);
        let mu4 = T::from_i64(4, &w) * &nu * &nu;
        let eps = T::epsilon(&w);
        let inv8z = cplx::re(T::one().at(&w)) / cplx::scale(&zw, &T::from_i64(8, &w));
        let mut term = cplx::re(T::one().at(&w));
        let mut sum = term.clone();
        let mut prev = T::one().at(&w);
        let mut converged = false;
        for k in 1..10_000i64 {
            let odd = T::from_i64(2 * k - 1, &w);
            let f = (mu4.clone() - &(odd.clone() * &odd)) / &T::from_i64(k, &w);
            term = cplx::scale(&(term * &inv8z), &f);
            let m = cplx::abs(&term);
            if m.is_zero() {
                converged = true;
                break;
            }
            if m > prev {
                break;
            }
            sum = sum + &term;
            if m <= eps.clone() * &cplx::abs(&sum) {
                converged = true;
                break;
            }
            prev = m;
        }
        if !converged {
            return None;
        }
        let pi = T::pi(&w);
        let pre = cplx::sqrt(&(cplx::re(pi) / cplx::scale(&zw, &T::from_i64(2, &w))));
        let v = pre * cplx::exp(&(-zw)) * sum;
        Some(cplx::at(&v, &self.ctx))
    }
}

/// Digits lost to cancellation in the ascending series: roughly
/// (|z| + Re z)/ln 10.
fn series_extra(x: f64) -> u32 {
    (x.max(0.0) / std::f64::consts::LN_10).ceil() as u32 + 10
}

/// K_n for integer n ≥ 0, limit form with logarithm and digamma terms.
fn k_integer_series<T: Real>(n: u32, z: &Complex<T>, w: &PrecisionCtx) -> Complex<T> {
    let half_z = cplx::scale(z, &T::from_ratio(1, 2, w));
    let q = half_z.clone() * &half_z;
    let eps = T::epsilon(w);
    let lh = cplx::ln(&half_z);
    let one = T::one().at(w);
    // finite part: ½ (z/2)^{-n} Σ_{k<n} (n-k-1)!/k! (-q)^k
    let mut fin = Complex::<T>::zero();
    if n > 0 {
        let mut fact_nk = one.clone(); // (n-1)!
        for j in 1..n as i64 {
            fact_nk = fact_nk * &T::from_i64(j, w);
        }
        let mut c = fact_nk; // (n-k-1)!/k!
        let mut qk = cplx::re(one.clone());
        let mq = -q.clone();
        for k in 0..n as i64 {
            fin = fin + cplx::scale(&qk, &c);
            if k + 1 < n as i64 {
                c = c / &(T::from_i64(n as i64 - k - 1, w) * &T::from_i64(k + 1, w));
                qk = qk * &mq;
            }
        }
        let p = cplx::exp(&cplx::scale(&lh, &T::from_i64(-(n as i64), w)));
        fin = cplx::scale(&(p * fin), &T::from_ratio(1, 2, w));
    }
    // infinite part: (-1)^n (z/2)^n Σ q^k/(k!(n+k)!) [½(ψ(k+1)+ψ(n+k+1)) - ln(z/2)]
    let g0 = T::euler_gamma(w);
    let mut h_k = T::zero().at(w);
    let mut h_nk = T::zero().at(w);
    for j in 1..=n as i64 {
        h_nk = h_nk + &(T::one() / &T::from_i64(j, w));
    }
    let mut c = one.clone();
    for j in 1..=n as i64 {
        c = c / &T::from_i64(j, w);
    }
    let mut term = cplx::re(c);
    let mut sum = Complex::<T>::zero();
    let half = T::from_ratio(1, 2, w);
    let qa = cplx::abs(&q).to_f64();
    for k in 0..1_000_000i64 {
        if k > 0 {
            let kk = T::from_i64(k, w);
            term = cplx::scale(&(term * &q), &(T::one() / &(kk.clone() * &T::from_i64(n as i64 + k, w))));
            h_k = h_k + &(T::one() / &kk);
            h_nk = h_nk + &(T::one() / &T::from_i64(n as i64 + k, w));
        }
        let psi = (h_k.clone() + &h_nk) * &half - &g0;
        let t = term.clone() * (cplx::re(psi) - lh.clone());
        sum = sum + &t;
        if (k as f64) > qa.sqrt() + 1.0 && cplx::abs(&t) <= eps.clone() * &cplx::abs(&sum) {
            break;
        }
    }
    let p = cplx::exp(&cplx::scale(&lh, &T::from_i64(n as i64, w)));
    let inf = p * sum;
    let inf = if n % 2 == 0 { inf } else { -inf };
    fin + inf
}

/// K_ν(z), principal branch, Re z > 0.
pub fn bessel_k<T: Real>(nu: &T, z: &Complex<T>, ctx: &PrecisionCtx) -> Result<Complex<T>> {
    BesselK::new(nu, ctx).eval(z)
}

/// Ascending-series branch only (for crossover checks).
pub fn bessel_k_series<T: Real>(nu: &T, z: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
    BesselK::new(nu, ctx).series(z)
}

/// Asymptotic branch only; `None` when it cannot reach working precision.
pub fn bessel_k_asymptotic<T: Real>(nu: &T, z: &Complex<T>, ctx: &PrecisionCtx) -> Option<Complex<T>> {
    BesselK::new(nu, ctx).asymptotic(z)
}

/// Accumulated Γ(1+ν)χ^{-ν/2}J_ν(b) = lim F_k^{(1)}(ν;χ), used as a check
/// quantity by the hypergeometric layer.
pub fn normalized_j<T: Real>(nu: &T, b: &T, ctx: &PrecisionCtx) -> Result<T> {
    let w = ctx.raised(5);
    let j = bessel_j(&nu.at(&w), &b.at(&w), &w)?;
    let half_b = b.at(&w) / &T::from_i64(2, &w);
    let g = T::one() / &rgamma_real(&(T::one() + &nu.at(&w)), &w);
    Ok((g * &j / &half_b.powf(&nu.at(&w))).at(ctx))
}
