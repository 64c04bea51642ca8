//! Number formatting.

use mbx_core::{BigReal, Real};

/// `sig` significant figures in scientific notation, e.g. "5.56269e-1".
pub fn sci(x: &BigReal, sig: usize) -> String {
    let f = x.to_f64();
    if sig > 15 || f == 0.0 && !num_traits::Zero::is_zero(x) || !f.is_finite() || f.abs() < 1e-300 {
        return x.to_sci_string(sig);
    }
    format!("{:.*e}", sig.saturating_sub(1), f)
}

/// Mantissa(exponent) form: "5.56269(-01)".
pub fn paper(x: &BigReal, sig: usize) -> String {
    let s = sci(x, sig);
    match s.split_once('e') {
        Some((m, e)) => {
            let e: i64 = e.parse().unwrap_or(0);
            let sign = if e < 0 { "-" } else { "" };
            format!("{m}({sign}{:02})", e.abs())
        }
        None => format!("{s}(00)"),
    }
}

/// Every digit at the working precision; parses back exactly.
pub fn full(x: &BigReal, digits: u32) -> String {
    x.to_sci_string(digits as usize)
}

/// How numbers are shown in human-readable output.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub paper: bool,
}

impl Style {
    pub fn number(&self, x: &BigReal, sig: usize) -> String {
        if self.paper {
            paper(x, sig)
        } else {
            sci(x, sig)
        }
    }
}
