//! Machine-readable result records. Numbers are decimal strings carrying
//! every working digit.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub mu: String,
    pub nu: String,
    pub gamma: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub params: ParamsRecord,
    pub a: ComplexRecord,
    /// "oracle", "expansion" or "both".
    pub method: String,
    /// The expansion value, or the direct sum when only that was computed.
    pub value: ComplexRecord,
    pub k_o: Option<usize>,
    pub est_error: Option<String>,
    /// |expansion − S| / |S − constant part| (|S| for coincident and treble
    /// poles); only with method "both".
    pub rel_error: Option<String>,
    pub regime: String,
    pub digits: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_value: Option<ComplexRecord>,
    /// |expansion − S| / |S|; only with method "both".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_error_sum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Flat form of [`EvalRecord`] for CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub mu: String,
    pub nu: String,
    pub gamma: String,
    pub b: String,
    pub a_re: String,
    pub a_im: String,
    pub method: String,
    pub value_re: String,
    pub value_im: String,
    pub k_o: Option<usize>,
    pub est_error: Option<String>,
    pub rel_error: Option<String>,
    pub regime: String,
    pub digits: u32,
    pub oracle_re: Option<String>,
    pub oracle_im: Option<String>,
}

impl From<&EvalRecord> for EvalRow {
    fn from(r: &EvalRecord) -> Self {
        EvalRow {
            mu: r.params.mu.clone(),
            nu: r.params.nu.clone(),
            gamma: r.params.gamma.clone(),
            b: r.params.b.clone(),
            a_re: r.a.re.clone(),
            a_im: r.a.im.clone(),
            method: r.method.clone(),
            value_re: r.value.re.clone(),
            value_im: r.value.im.clone(),
            k_o: r.k_o,
            est_error: r.est_error.clone(),
            rel_error: r.rel_error.clone(),
            regime: r.regime.clone(),
            digits: r.digits,
            oracle_re: r.oracle_value.as_ref().map(|v| v.re.clone()),
            oracle_im: r.oracle_value.as_ref().map(|v| v.im.clone()),
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub table: u8,
    pub row: String,
    pub column: String,
    pub mu: String,
    pub nu: String,
    pub gamma: String,
    pub b: String,
    pub a_re: String,
    pub a_im: String,
    pub sum_re: String,
    pub sum_im: String,
    pub expansion_re: String,
    pub expansion_im: String,
    pub k_o: usize,
    pub est_error: Option<String>,
    pub rel_error: String,
    pub regime: String,
    pub digits: u32,
}
