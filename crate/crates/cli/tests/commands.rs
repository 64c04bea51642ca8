use std::process::{Command, Output};

use mbx_cli::record::{CellRecord, EvalRecord};

fn mbx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbx"))
        .args(args)
        .env_remove("MBX_DIGITS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> EvalRecord {
    let mut v = args.to_vec();
    v.extend(["--output", "json"]);
    let o = mbx(&v);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn ratio(x: &str, want: f64) -> f64 {
    let x: f64 = x.parse().unwrap();
    (x / want).max(want / x)
}

#[test]
fn both_methods_report_the_tabulated_error() {
    let r = json(&["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--b", "1", "--a", "2", "--method", "both"]);
    assert_eq!(r.method, "both");
    assert_eq!(r.regime, "generic");
    assert_eq!(r.k_o, Some(5));
    assert!(ratio(r.rel_error.as_deref().unwrap(), 1.050e-4) < 1.01);
    assert!(r.oracle_value.unwrap().re.starts_with("4.67988"));
    assert_eq!(r.digits, 60);
}

#[test]
fn complex_argument_in_pi_fractions() {
    let r = json(&["eval", "--mu", "5/2", "--nu", "2/3", "--gamma", "1", "--a", "8@3pi/8", "--method", "both"]);
    assert!(ratio(r.rel_error.as_deref().unwrap(), 8.977e-5) < 1.01);
    let im: f64 = r.a.im.parse().unwrap();
    assert!((im - 8.0 * (3.0 * std::f64::consts::PI / 8.0).sin()).abs() < 1e-12);
}

#[test]
fn json_schema_fields() {
    let o = mbx(&["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "6", "--method", "expansion", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in ["params", "a", "method", "value", "k_o", "est_error", "rel_error", "regime", "digits"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    for k in ["mu", "nu", "gamma", "b"] {
        assert!(v["params"].get(k).is_some());
    }
    let r: EvalRecord = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
}

#[test]
fn auto_falls_back_to_the_direct_sum_when_the_expansion_is_too_coarse() {
    let r = json(&["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "2"]);
    assert_eq!(r.method, "oracle");
    assert!(r.value.re.starts_with("4.67988"));
    let r = json(&["--digits", "20", "eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "10"]);
    assert_eq!(r.method, "expansion");
}

#[test]
fn fixed_truncation() {
    let r = json(&["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "6", "--method", "expansion", "--terms", "3"]);
    assert_eq!(r.k_o, Some(3));
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mbx"))
        .args(["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "6", "--method", "oracle", "--output", "json"])
        .env("MBX_DIGITS", "25")
        .output()
        .unwrap();
    let r: EvalRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.digits, 25);
}

#[test]
fn csv_has_a_header_row() {
    let o = mbx(&["eval", "--mu", "8/5", "--nu", "1/3", "--gamma", "-4/3", "--a", "4", "--method", "both", "--output", "csv"]);
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    let h = rd.headers().unwrap().clone();
    assert_eq!(&h[0], "mu");
    assert!(h.iter().any(|c| c == "rel_error"));
    let rows: Vec<_> = rd.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][12], "double-pole(m=0,sign=+)");
}

#[test]
fn exit_codes() {
    let o = mbx(&["eval", "--mu", "1", "--nu", "0.6666", "--gamma", "1", "--a", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("0.6666") && stderr(&o).contains("rational"));
    let o = mbx(&["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "2@pi/2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = mbx(&["eval", "--mu", "1", "--nu", "2/3", "--gamma", "1", "--a", "-2,1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mbx(&["eval", "--mu", "3", "--nu", "1/3", "--gamma", "-4/3", "--a", "6", "--method", "expansion"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mbx(&["verify", "--filter", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mbx(&["table", "--id", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_names_the_selecting_hypothesis() {
    let o = mbx(&["classify", "--mu", "1", "--nu", "1/4", "--gamma", "-5/4"]);
    assert_eq!(stdout(&o).trim(), "coincident-double-pole(sign=+): gamma+nu=-1, nu non-integer, mu=1");
    let o = mbx(&["classify", "--mu", "2", "--nu", "1/3", "--gamma", "-4/3"]);
    assert!(stdout(&o).starts_with("mu-two-lift"));
    let o = mbx(&["classify", "--mu", "8/5", "--nu", "1/3", "--gamma", "-4/3", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regime"], "double-pole(m=0,sign=+)");
    assert_eq!(v["supported"], true);
}

#[test]
fn table_output_is_deterministic_and_complete() {
    let run = || mbx(&["--digits", "30", "table", "--id", "2", "--output", "json"]);
    let (x, y) = (run(), run());
    assert!(x.status.success());
    assert_eq!(x.stdout, y.stdout);
    let cells: Vec<CellRecord> = serde_json::from_slice(&x.stdout).unwrap();
    assert_eq!(cells.len(), 12);
    assert_eq!((cells[0].row.as_str(), cells[0].column.as_str()), ("theta=0", "mu=1/2"));
    assert_eq!((cells[11].row.as_str(), cells[11].column.as_str()), ("theta=3pi/8", "mu=5/2"));
}

#[test]
fn table_text_in_mantissa_exponent_form() {
    let o = mbx(&["table", "--id", "1", "--paper-format"]);
    let s = stdout(&o);
    let row = s.lines().find(|l| l.trim_start().starts_with("a=6")).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols, ["a=6", "17", "5.56269(-01)", "5.951(-15)", "1.93851(-01)", "2.807(-15)"]);
}

#[test]
fn verify_runs_a_filtered_suite() {
    let o = mbx(&["verify", "--filter", "apparent"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("[PASS] apparent-singularities"));
    let o = mbx(&["verify", "--list"]);
    assert_eq!(stdout(&o).lines().count(), mbx_core::verify::SUITES.len());
}
