use mbx_cli::parse::{angle, argument, rational, real, Angle};
use mbx_cli::record::{ComplexRecord, EvalRecord, ParamsRecord};
use mbx_cli::render::{paper, sci};
use mbx_cli::CliError;
use mbx_core::{BigReal, PrecisionCtx, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn ctx() -> PrecisionCtx {
    PrecisionCtx::new(40).unwrap()
}

#[test]
fn rationals_parse_exactly() {
    assert_eq!(rational("nu", "2/3").unwrap(), q(2, 3));
    assert_eq!(rational("gamma", "-5/4").unwrap(), q(-5, 4));
    assert_eq!(rational("mu", "+1").unwrap(), q(1, 1));
    assert_eq!(rational("mu", " 4/6 ").unwrap(), q(2, 3));
}

#[test]
fn decimals_are_rejected_for_exact_parameters() {
    for s in ["0.6666", "1e-3", "2.", "1/0", "x", "1/2/3"] {
        match rational("nu", s) {
            Err(CliError::Parse(m)) => assert!(m.contains(s.trim()) && m.starts_with("nu")),
            other => panic!("{s}: {other:?}"),
        }
    }
    let m = rational("nu", "0.6666").unwrap_err().to_string();
    assert!(m.contains("rational"), "{m}");
}

#[test]
fn reals_accept_decimals_and_fractions() {
    let c = ctx();
    assert_eq!(real("b", "1/2", &c).unwrap(), BigReal::from_ratio(1, 2, &c));
    assert_eq!(real("b", "0.5", &c).unwrap(), BigReal::from_ratio(1, 2, &c));
    assert!(real("b", "half", &c).is_err());
}

#[test]
fn angles_in_pi_fractions() {
    assert_eq!(angle("pi/4").unwrap(), Angle::PiMultiple(q(1, 4)));
    assert_eq!(angle("3pi/8").unwrap(), Angle::PiMultiple(q(3, 8)));
    assert_eq!(angle("-pi/8").unwrap(), Angle::PiMultiple(q(-1, 8)));
    assert_eq!(angle("3*pi/8").unwrap(), Angle::PiMultiple(q(3, 8)));
    assert_eq!(angle("π").unwrap(), Angle::PiMultiple(q(1, 1)));
    assert_eq!(angle("1/2pi").unwrap(), Angle::PiMultiple(q(1, 2)));
    assert_eq!(angle("0.3").unwrap(), Angle::Radians("0.3".into()));
    assert!(angle("pi/0").is_err());
    assert!(angle("2pix").is_err());
}

#[test]
fn argument_forms() {
    let c = ctx();
    let a = argument("8@pi/2", &c).unwrap();
    assert!(a.re.abs().to_f64() < 1e-39 && (a.im.to_f64() - 8.0).abs() < 1e-15);
    let a = argument("2∠pi", &c).unwrap();
    assert!((a.re.to_f64() + 2.0).abs() < 1e-15);
    let a = argument("3,-4", &c).unwrap();
    assert_eq!((a.re.to_f64(), a.im.to_f64()), (3.0, -4.0));
    let a = argument("5/2", &c).unwrap();
    assert_eq!((a.re.to_f64(), a.im.to_f64()), (2.5, 0.0));
    let a = argument("2@0.5", &c).unwrap();
    assert!((a.re.to_f64() - 2.0 * 0.5f64.cos()).abs() < 1e-15);
    let e = argument("3,i", &c).unwrap_err().to_string();
    assert!(e.contains("'i'"), "{e}");
}

#[test]
fn mantissa_exponent_rendering() {
    let c = ctx();
    let x = BigReal::parse_decimal("0.556268752891882", &c).unwrap();
    assert_eq!(paper(&x, 6), "5.56269(-01)");
    assert_eq!(sci(&x, 6), "5.56269e-1");
    let y = BigReal::parse_decimal("4.2693e-28", &c).unwrap();
    assert_eq!(paper(&y, 4), "4.269(-28)");
    assert_eq!(paper(&BigReal::from_i64(12, &c), 3), "1.20(01)");
}

fn record(s: [String; 8], k: Option<usize>) -> EvalRecord {
    let [a, b, c, d, e, f, g, h] = s;
    EvalRecord {
        params: ParamsRecord {
            mu: a,
            nu: b,
            gamma: c,
            b: d,
        },
        a: ComplexRecord { re: e.clone(), im: f },
        method: "both".into(),
        value: ComplexRecord { re: g.clone(), im: h.clone() },
        k_o: k,
        est_error: k.map(|_| e.clone()),
        rel_error: Some(g),
        regime: "double-pole(m=0,sign=+)".into(),
        digits: 60,
        oracle_value: k.map(|_| ComplexRecord { re: h.clone(), im: e }),
        rel_error_sum: None,
        warning: k.map(|k| format!("w\"{k}\n")),
    }
}

proptest! {
    #[test]
    fn json_records_round_trip(s in proptest::array::uniform8("[-+0-9./e]{0,12}"), k in proptest::option::of(0usize..200)) {
        let r = record(s, k);
        let back: EvalRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }
}
