//! The four subcommands, producing rendered output.

use std::fmt::Write as _;

use mbx_core::expansion::{classify_exact, expand, ErrorNorm, Regime, SeriesParams, Truncation};
use mbx_core::oracle::direct_sum;
use mbx_core::scalars::cplx;
use mbx_core::tables::{generate, Table};
use mbx_core::verify;
use mbx_core::{BigComplex, BigReal, PrecisionCtx, Real};
use num_rational::BigRational;

use crate::record::{CellRecord, ComplexRecord, EvalRecord, EvalRow, ParamsRecord};
use crate::render::{full, Style};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// The expansion when its estimated error meets the series tolerance,
    /// the direct sum otherwise.
    Auto,
    Oracle,
    Expansion,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct EvalRequest {
    pub mu: BigRational,
    pub nu: BigRational,
    pub gamma: BigRational,
    pub b: BigReal,
    pub a: BigComplex,
    pub method: Method,
    pub trunc: Truncation,
}

fn complex(z: &BigComplex, digits: u32) -> ComplexRecord {
    ComplexRecord {
        re: full(&z.re, digits),
        im: full(&z.im, digits),
    }
}

pub fn eval(req: &EvalRequest, ctx: &PrecisionCtx) -> Result<EvalRecord, CliError> {
    let p = SeriesParams::new(req.mu.clone(), req.nu.clone(), req.gamma.clone(), req.b.clone())?;
    let regime = classify_exact(&req.mu, &req.nu, &req.gamma);
    let d = ctx.digits;
    let mut rec = EvalRecord {
        params: ParamsRecord {
            mu: req.mu.to_string(),
            nu: req.nu.to_string(),
            gamma: req.gamma.to_string(),
            b: full(&req.b, d),
        },
        a: complex(&req.a, d),
        method: String::new(),
        value: complex(&cplx::re(BigReal::from_i64(0, ctx)), d),
        k_o: None,
        est_error: None,
        rel_error: None,
        regime: regime.tag(),
        digits: d,
        oracle_value: None,
        rel_error_sum: None,
        warning: None,
    };
    let oracle = |rec: &mut EvalRecord| -> Result<BigComplex, CliError> {
        let (s, _) = direct_sum(&p, &req.a, ctx)?;
        rec.method = "oracle".into();
        rec.value = complex(&s, d);
        Ok(s)
    };
    let method = match req.method {
        Method::Auto if !regime.is_supported() => Method::Oracle,
        m => m,
    };
    if method == Method::Oracle {
        oracle(&mut rec)?;
        return Ok(rec);
    }
    let r = expand(&p, &req.a, &req.trunc, ctx)?;
    if method == Method::Auto {
        let tol = BigReal::from_f64(ctx.series_tol, ctx) * &cplx::abs(&r.value);
        if r.est_error.as_ref().is_none_or(|e| *e > tol) {
            oracle(&mut rec)?;
            rec.warning = Some("expansion not accurate to the series tolerance here; used the direct sum".into());
            return Ok(rec);
        }
    }
    rec.method = if method == Method::Both { "both" } else { "expansion" }.into();
    rec.value = complex(&r.value, d);
    rec.k_o = Some(r.k_o);
    rec.est_error = r.est_error.as_ref().map(|e| full(e, d));
    rec.warning = r.warning.clone();
    if r.no_minimum {
        rec.warning = Some("no least term within the term cap".into());
    }
    if method == Method::Both {
        let (s, _) = direct_sum(&p, &req.a, ctx)?;
        rec.rel_error = Some(full(&r.error_vs(&s, ErrorNorm::tabulated(&r.regime)), d));
        rec.rel_error_sum = Some(full(&r.error_vs(&s, ErrorNorm::Sum), d));
        rec.oracle_value = Some(complex(&s, d));
    }
    Ok(rec)
}

fn csv_string<S: serde::Serialize>(rows: &[S]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Domain(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parse_back(s: &str, ctx: &PrecisionCtx) -> BigReal {
    BigReal::parse_decimal(s, ctx).expect("rendered numbers parse")
}

pub fn render_eval(rec: &EvalRecord, format: Format, style: Style, ctx: &PrecisionCtx) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rec).expect("records serialize") + "\n"),
        Format::Csv => csv_string(&[EvalRow::from(rec)]),
        Format::Text => {
            let n = |s: &str, sig| style.number(&parse_back(s, ctx), sig);
            let mut o = String::new();
            let sig = rec.digits as usize;
            let p = &rec.params;
            writeln!(o, "params    mu={} nu={} gamma={} b={}", p.mu, p.nu, p.gamma, n(&p.b, 6)).unwrap();
            writeln!(o, "a         {} + {} i", n(&rec.a.re, 15), n(&rec.a.im, 15)).unwrap();
            writeln!(o, "regime    {}", rec.regime).unwrap();
            writeln!(o, "method    {}", rec.method).unwrap();
            if let Some(v) = &rec.oracle_value {
                writeln!(o, "oracle    {} + {} i", n(&v.re, sig), n(&v.im, sig)).unwrap();
                writeln!(o, "expansion {} + {} i", n(&rec.value.re, sig), n(&rec.value.im, sig)).unwrap();
            } else {
                writeln!(o, "value     {} + {} i", n(&rec.value.re, sig), n(&rec.value.im, sig)).unwrap();
            }
            if let Some(k) = rec.k_o {
                writeln!(o, "k_o       {k}").unwrap();
            }
            if let Some(e) = &rec.est_error {
                writeln!(o, "est_error {}", n(e, 4)).unwrap();
            }
            if let Some(e) = &rec.rel_error {
                writeln!(o, "rel_error {}", n(e, 4)).unwrap();
            }
            if let Some(e) = &rec.rel_error_sum {
                writeln!(o, "rel_error_sum {}", n(e, 4)).unwrap();
            }
            if let Some(w) = &rec.warning {
                writeln!(o, "warning   {w}").unwrap();
            }
            Ok(o)
        }
    }
}

pub fn classify(mu: &BigRational, nu: &BigRational, gamma: &BigRational) -> (Regime, String) {
    let r = classify_exact(mu, nu, gamma);
    let s = format!("{}: {}", r.tag(), r.describe());
    (r, s)
}

pub fn table_records(t: &Table) -> Vec<CellRecord> {
    let d = t.digits;
    let mut out = Vec::new();
    for (row, cells) in t.layout.rows.iter().zip(&t.cells) {
        for (col, c) in t.layout.columns.iter().zip(cells) {
            out.push(CellRecord {
                table: t.layout.id,
                row: row.label.clone(),
                column: col.label.clone(),
                mu: col.mu.to_string(),
                nu: col.nu.to_string(),
                gamma: col.gamma.to_string(),
                b: col.b.to_string(),
                a_re: full(&c.a.re, d),
                a_im: full(&c.a.im, d),
                sum_re: full(&c.sum.re, d),
                sum_im: full(&c.sum.im, d),
                expansion_re: full(&c.expansion.value.re, d),
                expansion_im: full(&c.expansion.value.im, d),
                k_o: c.expansion.k_o,
                est_error: c.expansion.est_error.as_ref().map(|e| full(e, d)),
                rel_error: full(&c.rel_error, d),
                regime: c.expansion.regime.tag(),
                digits: d,
            });
        }
    }
    out
}

pub fn table(id: u8, format: Format, style: Style, ctx: &PrecisionCtx) -> Result<String, CliError> {
    let t = generate(id, ctx)?;
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&table_records(&t)).expect("records serialize") + "\n"),
        Format::Csv => csv_string(&table_records(&t)),
        Format::Text => {
            let mut head = vec![String::new()];
            for c in &t.layout.columns {
                if c.shows_k_o {
                    head.push("k_o".into());
                }
                if c.shows_sum {
                    head.push(format!("S({})", c.label));
                }
                head.push(format!("err({})", c.label));
            }
            let mut lines = vec![head];
            for (row, cells) in t.layout.rows.iter().zip(&t.cells) {
                let mut line = vec![row.label.clone()];
                for (c, cell) in t.layout.columns.iter().zip(cells) {
                    if c.shows_k_o {
                        line.push(cell.expansion.k_o.to_string());
                    }
                    if c.shows_sum {
                        line.push(style.number(&cell.sum.re, 6));
                    }
                    line.push(style.number(&cell.rel_error, 4));
                }
                lines.push(line);
            }
            let widths: Vec<usize> =
                (0..lines[0].len()).map(|i| lines.iter().map(|l| l[i].chars().count()).max().unwrap_or(0)).collect();
            let mut o = format!("table {}: {} ({} digits)\n", t.layout.id, t.layout.title, t.digits);
            for l in lines {
                let cells: Vec<String> = l.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                o.push_str(cells.join("  ").trim_end());
                o.push('\n');
            }
            Ok(o)
        }
    }
}

/// Run suites matching `filter`; the report and whether all passed.
pub fn verify(filter: Option<&str>, ctx: &PrecisionCtx) -> Result<(String, bool), CliError> {
    let reports = verify::run(filter, ctx);
    if reports.is_empty() {
        let names: Vec<&str> = verify::SUITES.iter().map(|s| s.name).collect();
        return Err(CliError::Parse(format!(
            "no verification suite matches '{}'; suites: {}",
            filter.unwrap_or(""),
            names.join(", ")
        )));
    }
    let mut o = String::new();
    let mut all = true;
    for r in &reports {
        all &= r.passed();
        writeln!(o, "[{}] {}", if r.passed() { "PASS" } else { "FAIL" }, r.name).unwrap();
        if let Some(e) = &r.error {
            writeln!(o, "    error: {e}").unwrap();
        }
        for c in &r.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            writeln!(o, "    {mark} {:.3e} <= {:.1e}  {}", c.measured, c.tolerance, c.label).unwrap();
        }
    }
    Ok((o, all))
}
