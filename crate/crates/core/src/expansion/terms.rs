//! Log-polynomial terms a^p Σ_j c_j (log a)^j, lazily generated families of
//! them, and optimal truncation of the merged sequence.

use std::sync::{Arc, Mutex};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expansion::regime::Regime;
use crate::scalars::cplx;
use crate::scalars::{PrecisionCtx, Real};

/// Cap on the per-family index k.
pub const K_MAX: usize = 120;
const K_START: usize = 16;
/// Consecutive increases that close the truncation window.
const RISES: usize = 3;
/// Warn when π/2 − |arg a| falls below this.
const SECTOR_MARGIN: f64 = 0.2;

/// a^power · Σ_j logc[j] (log a)^j.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub power: BigRational,
    pub logc: Vec<Complex<T>>,
}

impl<T: Real> Term<T> {
    pub fn new(power: BigRational, logc: Vec<Complex<T>>) -> Self {
        Term { power, logc }
    }

    pub fn constant(power: BigRational, c: Complex<T>) -> Self {
        Term {
            power,
            logc: vec![c],
        }
    }

    pub fn real(power: BigRational, c: T) -> Self {
        Self::constant(power, cplx::re(c))
    }

    pub fn is_zero(&self) -> bool {
        self.logc.iter().all(|c| c.re.is_zero() && c.im.is_zero())
    }

    /// Value at a, given log a (principal branch).
    pub fn eval(&self, log_a: &Complex<T>, ctx: &PrecisionCtx) -> Complex<T> {
        let mut s = cplx::re(T::zero().at(ctx));
        for c in self.logc.iter().rev() {
            s = s * log_a.clone() + cplx::at(c, ctx);
        }
        let p = T::from_rational(&self.power, ctx);
        s * cplx::exp(&cplx::scale(log_a, &p))
    }

    pub fn scaled(&self, c: &Complex<T>) -> Self {
        Term {
            power: self.power.clone(),
            logc: self.logc.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn scaled_real(&self, c: &T) -> Self {
        Term {
            power: self.power.clone(),
            logc: self.logc.iter().map(|x| cplx::scale(x, c)).collect(),
        }
    }

    /// Multiply by a^dp.
    pub fn shifted(&self, dp: &BigRational) -> Self {
        Term {
            power: &self.power + dp,
            logc: self.logc.clone(),
        }
    }

    /// a ∂/∂a.
    pub fn a_deriv(&self, ctx: &PrecisionCtx) -> Self {
        let p = T::from_rational(&self.power, ctx);
        let n = self.logc.len();
        let logc = (0..n)
            .map(|j| {
                let mut c = cplx::scale(&self.logc[j], &p);
                if j + 1 < n {
                    c = c + cplx::scale(&self.logc[j + 1], &T::from_i64(j as i64 + 1, ctx));
                }
                c
            })
            .collect();
        Term {
            power: self.power.clone(),
            logc,
        }
    }

    /// Sum with a term of the same power.
    pub fn plus(&self, other: &Term<T>) -> Self {
        debug_assert_eq!(self.power, other.power);
        let n = self.logc.len().max(other.logc.len());
        let get = |v: &Vec<Complex<T>>, j: usize| v.get(j).cloned();
        let logc = (0..n)
            .map(|j| match (get(&self.logc, j), get(&other.logc, j)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => unreachable!(),
            })
            .collect();
        Term {
            power: self.power.clone(),
            logc,
        }
    }

    /// t(a) − 2^e t(a/2), written again as a term in a.
    pub fn minus_halved(&self, e: &BigRational, ctx: &PrecisionCtx) -> Self {
        // 2^e (a/2)^p = 2^{e−p} a^p, and log(a/2) = log a − log 2
        let f_exp = e - &self.power;
        let f = if f_exp.is_zero() {
            T::one().at(ctx)
        } else {
            T::from_i64(2, ctx).powf(&T::from_rational(&f_exp, ctx))
        };
        let ln2 = -T::from_i64(2, ctx).ln();
        let n = self.logc.len();
        let mut logc = self.logc.clone();
        // binomial re-expansion of Σ c_j (L + ln2')^j
        for j in 0..n {
            let mut binom = T::one().at(ctx);
            let mut pw = T::one().at(ctx);
            for i in (0..=j).rev() {
                let c = cplx::scale(&self.logc[j], &(binom.clone() * &pw * &f));
                logc[i] = logc[i].clone() - c;
                // next: C(j, i−1) = C(j, i)·i/(j−i+1)
                binom = binom * &T::from_i64(i as i64, ctx) / &T::from_i64((j - i + 1) as i64, ctx);
                pw = pw * &ln2;
            }
        }
        Term {
            power: self.power.clone(),
            logc,
        }
    }
}

type TermGen<T> = dyn Fn(usize) -> Result<Option<Term<T>>> + Send + Sync;

/// A sequence of terms indexed by k, generated on demand and cached. `None`
/// marks an index that is omitted from the sum.
#[derive(Clone)]
pub struct Family<T> {
    label: String,
    gen: Arc<TermGen<T>>,
    cache: Arc<Mutex<Vec<Option<Term<T>>>>>,
}

impl<T: Real> Family<T> {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize) -> Result<Option<Term<T>>> + Send + Sync + 'static,
    {
        Family {
            label: label.into(),
            gen: Arc::new(f),
            cache: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn term(&self, k: usize) -> Result<Option<Term<T>>> {
        let mut c = self.cache.lock().unwrap();
        while c.len() <= k {
            let t = (self.gen)(c.len())?;
            c.push(t);
        }
        Ok(c[k].clone())
    }

    /// Termwise image under f.
    pub fn map<F>(&self, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Term<T>) -> Term<T> + Send + Sync + 'static,
    {
        let parent = self.clone();
        Family::new(label, move |k| Ok(parent.term(k)?.map(|t| f(&t))))
    }
}

impl<T> std::fmt::Debug for Family<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family").field("label", &self.label).finish()
    }
}

/// How many asymptotic terms to keep.
#[derive(Debug, Clone, PartialEq)]
pub enum Truncation {
    /// Just before the least term of the merged sequence.
    Auto,
    /// Every family index k ≤ K.
    Fixed(usize),
    /// Every merged term with a-power ≥ p.
    PowerFloor(BigRational),
}

/// Result of [`optimal_truncation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cut {
    /// Number of leading terms kept; the least term sits at this index.
    pub kept: usize,
    /// No sustained rise was seen: the magnitudes may still be decreasing.
    pub no_minimum: bool,
}

/// Truncate just before the least magnitude. Exact zeros are ignored. The
/// window closes once `RISES` consecutive terms exceed the running minimum;
/// without that, all terms are kept and `no_minimum` is set.
pub fn optimal_truncation<T: Real>(mags: &[T]) -> Cut {
    optimal_truncation_with(mags, RISES)
}

/// As [`optimal_truncation`], closing the window after `patience` terms
/// above the running minimum. Interleaving n families needs n·RISES.
pub fn optimal_truncation_with<T: Real>(mags: &[T], patience: usize) -> Cut {
    let mut best: Option<usize> = None;
    let mut above = 0;
    for (i, m) in mags.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        match best {
            Some(b) if *m >= mags[b] => above += 1,
            _ => {
                best = Some(i);
                above = 0;
            }
        }
        if above >= patience {
            return Cut {
                kept: best.unwrap_or(0),
                no_minimum: false,
            };
        }
    }
    Cut {
        kept: mags.len(),
        no_minimum: true,
    }
}

/// One entry of the merged sequence: all family terms sharing a power.
#[derive(Debug, Clone)]
pub struct MergedTerm<T> {
    pub term: Term<T>,
    /// (family index, k) of the contributing terms.
    pub members: Vec<(usize, usize)>,
}

fn merge<T: Real>(mut all: Vec<(usize, usize, Term<T>)>) -> Vec<MergedTerm<T>> {
    all.sort_by(|x, y| y.2.power.cmp(&x.2.power));
    let mut out: Vec<MergedTerm<T>> = Vec::new();
    for (fi, k, t) in all {
        match out.last_mut() {
            Some(m) if m.term.power == t.power => {
                m.term = m.term.plus(&t);
                m.members.push((fi, k));
            }
            _ => out.push(MergedTerm {
                term: t,
                members: vec![(fi, k)],
            }),
        }
    }
    out
}

/// Constant part plus families of asymptotic terms, all in powers of a.
#[derive(Debug, Clone)]
pub struct AsymptoticSeries<T> {
    pub regime: Regime,
    pub constant: Vec<Term<T>>,
    pub families: Vec<Family<T>>,
}

/// An evaluated, truncated expansion.
#[derive(Debug, Clone)]
pub struct ExpansionResult<T> {
    pub value: Complex<T>,
    /// Residue / constant part alone.
    pub constant: Complex<T>,
    /// Merged terms in decreasing a-power, including those past the cut.
    pub terms: Vec<Complex<T>>,
    /// Number of merged terms summed.
    pub kept: usize,
    /// Largest family index k among the summed terms.
    pub k_o: usize,
    /// |first omitted non-zero term|, if one was computed.
    pub est_error: Option<T>,
    pub regime: Regime,
    pub no_minimum: bool,
    pub warning: Option<String>,
}

impl<T: Real> AsymptoticSeries<T> {
    pub fn new(regime: Regime, constant: Vec<Term<T>>, families: Vec<Family<T>>) -> Self {
        AsymptoticSeries {
            regime,
            constant,
            families,
        }
    }

    /// Termwise image of everything under f.
    pub fn map<F>(&self, regime: Regime, f: F) -> Self
    where
        F: Fn(&Term<T>) -> Term<T> + Send + Sync + Clone + 'static,
    {
        AsymptoticSeries {
            regime,
            constant: self.constant.iter().map(&f).collect(),
            families: self
                .families
                .iter()
                .map(|fam| fam.map(fam.label().to_string(), f.clone()))
                .collect(),
        }
    }

    /// Sum of two series.
    pub fn joined(mut self, other: AsymptoticSeries<T>, regime: Regime) -> Self {
        self.regime = regime;
        self.constant.extend(other.constant);
        self.families.extend(other.families);
        self
    }

    /// Merged terms from family indices k ≤ depth, in decreasing power. With
    /// `complete`, only powers that no deeper term can reach are returned.
    pub fn merged(&self, depth: usize, complete: bool) -> Result<Vec<MergedTerm<T>>> {
        let mut all: Vec<(usize, usize, Term<T>)> = Vec::new();
        let mut floor: Option<BigRational> = None;
        for (fi, fam) in self.families.iter().enumerate() {
            let mut lowest: Option<BigRational> = None;
            for k in 0..=depth {
                if let Some(t) = fam.term(k)? {
                    lowest = Some(t.power.clone());
                    all.push((fi, k, t));
                }
            }
            if let Some(l) = lowest {
                floor = Some(match floor {
                    Some(f) if f > l => f,
                    _ => l,
                });
            }
        }
        if complete {
            if let Some(f) = &floor {
                all.retain(|(_, _, t)| t.power >= *f);
            }
        }
        Ok(merge(all))
    }

    /// The terms with family index exactly k, merged.
    pub fn merged_at(&self, k: usize) -> Result<Vec<MergedTerm<T>>> {
        let mut all = Vec::new();
        for (fi, fam) in self.families.iter().enumerate() {
            if let Some(t) = fam.term(k)? {
                all.push((fi, k, t));
            }
        }
        Ok(merge(all))
    }

    /// Evaluate at a with the given truncation.
    pub fn evaluate(&self, a: &Complex<T>, trunc: &Truncation, ctx: &PrecisionCtx) -> Result<ExpansionResult<T>> {
        if !(a.re > T::zero()) {
            return Err(Error::Domain(format!(
                "expansion needs |arg a| < pi/2, got a = {} + {} i",
                a.re.to_sci_string(12),
                a.im.to_sci_string(12)
            )));
        }
        let w = ctx.raised(5);
        let log_a = cplx::ln(&cplx::at(a, &w));
        let mut constant = cplx::re(T::zero().at(&w));
        for t in &self.constant {
            constant = constant + t.eval(&log_a, &w);
        }
        let (merged, values, kept, no_minimum) = match trunc {
            Truncation::Auto => {
                let mut depth = K_START;
                loop {
                    let merged = self.merged(depth, true)?;
                    let values: Vec<Complex<T>> = merged.iter().map(|m| m.term.eval(&log_a, &w)).collect();
                    let mags: Vec<T> = values.iter().map(cplx::abs).collect();
                    let cut = optimal_truncation_with(&mags, RISES * self.families.len().max(1));
                    if !cut.no_minimum || depth >= K_MAX {
                        break (merged, values, cut.kept, cut.no_minimum);
                    }
                    depth = (2 * depth).min(K_MAX);
                }
            }
            Truncation::Fixed(kk) => {
                let mut merged = self.merged(*kk, false)?;
                let kept = merged.len();
                merged.extend(self.merged_at(kk + 1)?);
                let values: Vec<Complex<T>> = merged.iter().map(|m| m.term.eval(&log_a, &w)).collect();
                (merged, values, kept, false)
            }
            Truncation::PowerFloor(p) => {
                let mut depth = K_START;
                loop {
                    let merged = self.merged(depth, true)?;
                    let reached = merged.last().is_some_and(|m| m.term.power < *p);
                    if reached || depth >= K_MAX || merged.is_empty() {
                        let values: Vec<Complex<T>> =
                            merged.iter().map(|m| m.term.eval(&log_a, &w)).collect();
                        let kept = merged.iter().take_while(|m| m.term.power >= *p).count();
                        break (merged, values, kept, !reached);
                    }
                    depth = (2 * depth).min(K_MAX);
                }
            }
        };
        let mut value = constant.clone();
        for v in &values[..kept] {
            value = value + v.clone();
        }
        let k_o = merged[..kept]
            .iter()
            .flat_map(|m| m.members.iter().map(|&(_, k)| k))
            .max()
            .unwrap_or(0);
        let est_error = values[kept..]
            .iter()
            .map(cplx::abs)
            .find(|m| !m.is_zero())
            .map(|m| m.at(ctx));
        let margin = T::pi(&w) / &T::from_i64(2, &w) - &cplx::arg(a).abs();
        let warning = if margin.to_f64() < SECTOR_MARGIN {
            Some(format!(
                "|arg a| is within {:.3} of pi/2; the expansion loses accuracy near the sector edge",
                margin.to_f64()
            ))
        } else {
            None
        };
        Ok(ExpansionResult {
            value: cplx::at(&value, ctx),
            constant: cplx::at(&constant, ctx),
            terms: values.iter().map(|v| cplx::at(v, ctx)).collect(),
            kept,
            k_o,
            est_error,
            regime: self.regime.clone(),
            no_minimum,
            warning,
        })
    }
}

/// What a relative error is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorNorm {
    /// |value − S| / |S|.
    Sum,
    /// |value − S| / |S − constant part|: relative to the asymptotic sums.
    AsymptoticPart,
}

impl ErrorNorm {
    /// The normalization used by the published error tables: against the
    /// asymptotic sums where the constant part is a single residue power,
    /// against S for the coincident double pole and the treble pole.
    pub fn tabulated(regime: &Regime) -> ErrorNorm {
        match regime {
            Regime::CoincidentDoublePole { .. } | Regime::TreblePole => ErrorNorm::Sum,
            _ => ErrorNorm::AsymptoticPart,
        }
    }
}

impl<T: Real> ExpansionResult<T> {
    /// Relative error against a reference value of the series.
    pub fn error_vs(&self, reference: &Complex<T>, norm: ErrorNorm) -> T {
        let d = cplx::abs(&(self.value.clone() - reference.clone()));
        let den = match norm {
            ErrorNorm::Sum => cplx::abs(reference),
            ErrorNorm::AsymptoticPart => cplx::abs(&(reference.clone() - self.constant.clone())),
        };
        d / &den
    }
}
