//! Fixed error-table grids: each cell compares the optimally truncated
//! expansion against the direct sum. Cells are evaluated concurrently and
//! returned in grid order.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{expand, ErrorNorm, ExpansionResult, SeriesParams, Truncation};
use crate::oracle::direct_sum;
use crate::scalars::{PrecisionCtx, Real};
use crate::{BigComplex, BigReal};

/// Expansion and direct sum at one point.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub params: SeriesParams<BigReal>,
    pub a: BigComplex,
    pub sum: BigComplex,
    pub expansion: ExpansionResult<BigReal>,
    /// |expansion − S|, normalized as in [`ErrorNorm::tabulated`].
    pub rel_error: BigReal,
}

/// Evaluate both routes at a and measure the tabulated relative error.
pub fn compare(
    params: &SeriesParams<BigReal>,
    a: &BigComplex,
    trunc: &Truncation,
    ctx: &PrecisionCtx,
) -> Result<Comparison> {
    let expansion = expand(params, a, trunc, ctx)?;
    let (sum, _) = direct_sum(params, a, ctx)?;
    let rel_error = expansion.error_vs(&sum, ErrorNorm::tabulated(&expansion.regime));
    Ok(Comparison {
        params: params.clone(),
        a: a.clone(),
        sum,
        expansion,
        rel_error,
    })
}

/// A column of a table: one parameter set.
#[derive(Debug, Clone)]
pub struct Column {
    pub label: String,
    pub mu: BigRational,
    pub nu: BigRational,
    pub gamma: BigRational,
    pub b: i64,
    /// Whether the published layout shows S for this column.
    pub shows_sum: bool,
    /// Whether the published layout shows k_o for this column.
    pub shows_k_o: bool,
}

/// A row: one value of a, r·e^{iπθ} with θ rational.
#[derive(Debug, Clone)]
pub struct Row {
    pub label: String,
    pub modulus: i64,
    pub theta: BigRational,
}

impl Row {
    pub fn a(&self, ctx: &PrecisionCtx) -> BigComplex {
        let r = BigReal::from_i64(self.modulus, ctx);
        let t = BigReal::from_rational(&self.theta, ctx);
        Complex::new(r.clone() * &t.cos_pi(ctx), r * &t.sin_pi(ctx))
    }
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub id: u8,
    pub title: &'static str,
    pub rows: Vec<Row>,
    pub columns: Vec<Column>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub layout: Layout,
    pub digits: u32,
    /// cells[row][column]
    pub cells: Vec<Vec<Comparison>>,
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn col(label: &str, mu: BigRational, nu: BigRational, gamma: BigRational, b: i64, sum: bool, k_o: bool) -> Column {
    Column {
        label: label.into(),
        mu,
        nu,
        gamma,
        b,
        shows_sum: sum,
        shows_k_o: k_o,
    }
}

fn real_rows() -> Vec<Row> {
    [2, 4, 6, 8, 10]
        .into_iter()
        .map(|a| Row {
            label: format!("a={a}"),
            modulus: a,
            theta: q(0, 1),
        })
        .collect()
}

/// Grid of table `id` ∈ {1, 2, 3}.
pub fn layout(id: u8) -> Result<Layout> {
    match id {
        1 => Ok(Layout {
            id,
            title: "simple poles, mu=1 nu=2/3 gamma=1, real a",
            rows: real_rows(),
            columns: vec![
                col("b=1", q(1, 1), q(2, 3), q(1, 1), 1, true, true),
                col("b=2", q(1, 1), q(2, 3), q(1, 1), 2, true, false),
            ],
        }),
        2 => Ok(Layout {
            id,
            title: "complex a=8exp(i theta), nu=2/3 gamma=1 b=1",
            rows: (0..4)
                .map(|i| Row {
                    label: if i == 0 { "theta=0".into() } else { format!("theta={}pi/8", i) },
                    modulus: 8,
                    theta: q(i, 8),
                })
                .collect(),
            columns: [(q(1, 2), "mu=1/2"), (q(1, 1), "mu=1"), (q(5, 2), "mu=5/2")]
                .into_iter()
                .map(|(mu, l)| col(l, mu, q(2, 3), q(1, 1), 1, false, false))
                .collect(),
        }),
        3 => Ok(Layout {
            id,
            title: "pole regimes, b=1, real a",
            rows: real_rows(),
            columns: vec![
                col("mu=2 nu=0 gamma=1", q(2, 1), q(0, 1), q(1, 1), 1, false, false),
                col("mu=2 nu=1 gamma=3/4", q(2, 1), q(1, 1), q(3, 4), 1, false, false),
                col("mu=8/5 nu=1/3 gamma=-4/3", q(8, 5), q(1, 3), q(-4, 3), 1, false, false),
                col("mu=1 nu=1/4 gamma=-5/4", q(1, 1), q(1, 4), q(-5, 4), 1, false, false),
                col("mu=1 nu=0 gamma=-1", q(1, 1), q(0, 1), q(-1, 1), 1, false, false),
            ],
        }),
        _ => Err(Error::Domain(format!("no table with id {id}; expected 1, 2 or 3"))),
    }
}

/// Evaluate every cell of table `id` with automatic truncation.
pub fn generate(id: u8, ctx: &PrecisionCtx) -> Result<Table> {
    let layout = layout(id)?;
    let jobs: Vec<(usize, usize)> = (0..layout.rows.len())
        .flat_map(|r| (0..layout.columns.len()).map(move |c| (r, c)))
        .collect();
    let flat: Vec<Comparison> = jobs
        .par_iter()
        .map(|&(r, c)| {
            let column = &layout.columns[c];
            let p = SeriesParams::new(
                column.mu.clone(),
                column.nu.clone(),
                column.gamma.clone(),
                BigReal::from_i64(column.b, ctx),
            )?;
            compare(&p, &layout.rows[r].a(ctx), &Truncation::Auto, ctx)
        })
        .collect::<Result<_>>()?;
    let width = layout.columns.len();
    let mut it = flat.into_iter();
    let cells = (0..layout.rows.len()).map(|_| it.by_ref().take(width).collect()).collect();
    Ok(Table {
        layout,
        digits: ctx.digits,
        cells,
    })
}
