//! Double-exponential quadrature of ∫₀^∞ x^{γ+s−1} K_ν(bx) (1+x²)^{−μ} dx.
//!
//! (0,1] uses x = 1/(1+e^{−π sinh t}); [1,∞) uses x = 1 + exp(t − e^{−t}).
//! Everything except x^s is cached per node, so a table built once serves
//! every s.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::expansion::regime::SeriesParams;
use crate::scalars::bessel::BesselK;
use crate::scalars::cplx;
use crate::scalars::{PrecisionCtx, Real};

/// Nodes sit on t = j / 2^FINEST; level L uses every 2^{FINEST−L}-th one.
const FINEST: u32 = 12;
const FIRST_LEVEL: u32 = 3;
const T_LIMIT: f64 = 14.0;
const GUARD: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Piece {
    Inner,
    Outer,
}

#[derive(Debug, Clone)]
struct Node<T> {
    ln_x: T,
    /// dx/dt · x^{γ−1} K_ν(bx) (1+x²)^{−μ}
    g: T,
}

/// Cached quadrature for one (μ, ν, γ, b). μ = 0 is allowed.
pub struct MellinQuadrature<T> {
    mu: BigRational,
    nu: BigRational,
    gamma_exp: BigRational,
    b: T,
    ctx: PrecisionCtx,
    bessel: BesselK<T>,
    nodes: Mutex<HashMap<(Piece, i64), Node<T>>>,
}

impl<T: Real> MellinQuadrature<T> {
    pub fn new(
        mu: BigRational,
        nu: BigRational,
        gamma_exp: BigRational,
        b: T,
        ctx: &PrecisionCtx,
    ) -> Result<Self> {
        if mu.is_negative() {
            return Err(Error::Domain(format!("mu must be non-negative, got {mu}")));
        }
        let w = ctx.raised(GUARD);
        let nu_abs = T::from_rational(&nu.abs(), &w);
        Ok(MellinQuadrature {
            bessel: BesselK::new(&nu_abs, &w),
            mu,
            nu: nu.abs(),
            gamma_exp,
            b,
            ctx: *ctx,
            nodes: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_params(p: &SeriesParams<T>, ctx: &PrecisionCtx) -> Result<Self> {
        Self::new(p.mu.clone(), p.nu.clone(), p.gamma_exp.clone(), p.b.clone(), ctx)
    }

    fn node(&self, piece: Piece, j: i64) -> Result<Node<T>> {
        if let Some(n) = self.nodes.lock().unwrap().get(&(piece, j)) {
            return Ok(n.clone());
        }
        let n = self.compute_node(piece, j)?;
        self.nodes.lock().unwrap().insert((piece, j), n.clone());
        Ok(n)
    }

    fn compute_node(&self, piece: Piece, j: i64) -> Result<Node<T>> {
        let w = self.ctx.raised(GUARD);
        let one = T::one().at(&w);
        let t = T::from_i64(j, &w) / &T::from_i64(1 << FINEST, &w);
        let (x, ln_x, dxdt) = match piece {
            Piece::Inner => {
                let u = T::pi(&w) * &t.sinh();
                // x = 1/(1+e^{−u}), 1−x = e^{−u}/(1+e^{−u})
                let (x, one_minus) = if u >= T::zero() {
                    let e = (-u.clone()).exp();
                    (one.clone() / &(one.clone() + &e), e.clone() / &(one.clone() + &e))
                } else {
                    let e = u.exp();
                    (e.clone() / &(one.clone() + &e), one.clone() / &(one.clone() + &e))
                };
                let ln_x = if u >= T::zero() {
                    -(one.clone() + &(-u.clone()).exp()).ln()
                } else {
                    u.clone() - &(one.clone() + &u.exp()).ln()
                };
                let dxdt = T::pi(&w) * &t.cosh() * &x * &one_minus;
                (x, ln_x, dxdt)
            }
            Piece::Outer => {
                let v = (t.clone() - &(-t.clone()).exp()).exp();
                let x = one.clone() + &v;
                let dxdt = v.clone() * &(one.clone() + &(-t).exp());
                (x.clone(), x.ln(), dxdt)
            }
        };
        if dxdt.is_zero() {
            return Ok(Node {
                ln_x,
                g: T::zero().at(&w),
            });
        }
        let bx = self.b.at(&w) * &x;
        let k = self.bessel.eval(&cplx::re(bx))?.re;
        let gm1 = T::from_rational(&self.gamma_exp, &w) - &one;
        let mu = T::from_rational(&self.mu, &w);
        let damp = (-(mu * &(one.clone() + &(x.clone() * &x)).ln())).exp();
        let g = dxdt * &(gm1 * &ln_x).exp() * &k * &damp;
        Ok(Node { ln_x, g })
    }

    /// Σ over one piece at one level, walking outward from t = 0.
    fn piece_sum(&self, piece: Piece, level: u32, s: &Complex<T>, eps: &T) -> Result<Complex<T>> {
        let w = self.ctx.raised(GUARD);
        let stride = 1i64 << (FINEST - level);
        let limit = (T_LIMIT * (1u64 << FINEST) as f64) as i64;
        let term = |j: i64| -> Result<Complex<T>> {
            let n = self.node(piece, j)?;
            if n.g.is_zero() {
                return Ok(cplx::re(T::zero().at(&w)));
            }
            let e = cplx::exp(&cplx::scale(s, &n.ln_x));
            Ok(cplx::scale(&e, &n.g))
        };
        let mut sum = term(0)?;
        for dir in [1i64, -1] {
            let mut small = 0;
            let mut j = dir * stride;
            loop {
                if j.abs() > limit {
                    return Err(Error::NoConvergence(format!(
                        "quadrature tail at |t|>{T_LIMIT} still significant"
                    )));
                }
                let t = term(j)?;
                sum = sum + t.clone();
                if cplx::abs(&t) <= eps.clone() * &cplx::abs(&sum) {
                    small += 1;
                    if small >= 3 {
                        break;
                    }
                } else {
                    small = 0;
                }
                j += dir * stride;
            }
        }
        Ok(sum)
    }

    /// The integral at s; StripViolation unless Re(γ+s) > ν.
    pub fn integrate(&self, s: &Complex<T>) -> Result<Complex<T>> {
        let w = self.ctx.raised(GUARD);
        let s = cplx::at(s, &w);
        let re = T::from_rational(&self.gamma_exp, &w) + &s.re;
        let nu = T::from_rational(&self.nu, &w);
        if re <= nu {
            return Err(Error::StripViolation {
                re: re.to_f64(),
                nu: nu.to_f64(),
            });
        }
        let tol: T = self.ctx.quad_eps::<T>().at(&w);
        let walk_eps = tol.clone() / &T::from_i64(1000, &w);
        let mut prev: Option<Complex<T>> = None;
        for level in FIRST_LEVEL..=FINEST {
            let h = T::one().at(&w) / &T::from_i64(1 << level, &w);
            let sum = self.piece_sum(Piece::Inner, level, &s, &walk_eps)?
                + self.piece_sum(Piece::Outer, level, &s, &walk_eps)?;
            let est = cplx::scale(&sum, &h);
            if let Some(p) = prev {
                if cplx::abs(&(est.clone() - p)) <= tol.clone() * &cplx::abs(&est) {
                    return Ok(cplx::at(&est, &self.ctx));
                }
            }
            prev = Some(est);
        }
        Err(Error::NoConvergence(format!(
            "quadrature did not reach {:e} by step 2^-{FINEST}",
            self.ctx.quad_tol
        )))
    }

    /// Number of cached nodes.
    pub fn cached_nodes(&self) -> usize {
        self.nodes.lock().unwrap().len()
    }
}

/// One-off quadrature of the Mellin integral at s.
pub fn mellin_quadrature<T: Real>(
    s: &Complex<T>,
    params: &SeriesParams<T>,
    ctx: &PrecisionCtx,
) -> Result<Complex<T>> {
    MellinQuadrature::from_params(params, ctx)?.integrate(s)
}
