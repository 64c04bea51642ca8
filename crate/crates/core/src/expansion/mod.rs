//! Large-|a| expansions: classification, one builder per regime, optimal
//! truncation.

pub mod engines;
pub mod regime;
pub mod terms;

use num_complex::Complex;

pub use engines::series;
pub use regime::{classify, classify_exact, Regime, SeriesParams, Sign};
pub use terms::{
    optimal_truncation, optimal_truncation_with, AsymptoticSeries, Cut, ErrorNorm, ExpansionResult, Family, Term,
    Truncation, K_MAX,
};

use crate::error::Result;
use crate::scalars::{PrecisionCtx, Real};

/// Expansion for whichever regime the parameters classify into.
pub fn expand<T: Real>(
    params: &SeriesParams<T>,
    a: &Complex<T>,
    trunc: &Truncation,
    ctx: &PrecisionCtx,
) -> Result<ExpansionResult<T>> {
    series(params, ctx)?.evaluate(a, trunc, ctx)
}

macro_rules! expand_with {
    ($(#[$doc:meta] $name:ident => $builder:path;)*) => {$(
        #[$doc]
        pub fn $name<T: Real>(
            params: &SeriesParams<T>,
            a: &Complex<T>,
            trunc: &Truncation,
            ctx: &PrecisionCtx,
        ) -> Result<ExpansionResult<T>> {
            $builder(params, ctx)?.evaluate(a, trunc, ctx)
        }
    )*};
}

expand_with! {
    /// Simple poles only.
    expand_simple_poles => engines::simple_poles;
    /// ν = 0 (uniform log form, also valid for even γ).
    expand_nu_zero => engines::nu_zero;
    /// ν = 0, γ = 2m, collapsed form.
    expand_nu_zero_even => engines::nu_zero_even;
    /// ν = 1 (two sums).
    expand_nu_one => engines::nu_one;
    /// ν = 1, γ = 2m+1, collapsed form.
    expand_nu_one_odd => engines::nu_one_odd;
    /// Double pole at s = 1, μ non-integer.
    expand_double_pole => engines::double_pole;
    /// Double pole with coincident lattices, μ = 1.
    expand_coincident_double_pole => engines::coincident_double_pole;
    /// Treble pole: μ = 1, ν = 0, γ = −1.
    expand_treble_pole => engines::treble_pole;
    /// Integer ν ≥ 2 through the K_ν recurrence.
    expand_recurrence => engines::recurrence;
    /// μ = 2, γ + ν = −1 from μ = 1 by differentiation in a.
    expand_mu_two_lift => engines::mu_two_lift;
    /// The alternating series Σ(−1)^{n−1}….
    expand_alternating => engines::alternating;
    /// The series with K′_ν in place of K_ν.
    expand_derivative => engines::derivative;
}
