mod common;

use std::process::Command;

use branchcuts::algorithms::{bc_c, MethodChoice, Options};
use branchcuts::classify::{classify_cutset, ProbeOptions};
use branchcuts::cli::{run, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};
use branchcuts::expr::Bindings;
use branchcuts::json::{Document, NUMERIC_VERDICT};
use common::*;

fn bccalc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bccalc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn lines(s: &str) -> Vec<&str> {
    s.lines().collect()
}

#[test]
fn bessel_with_a_free_order() {
    let (code, out, err) = bccalc(&["BesselJ(a, sqrt(z^3-1))", "--param", "a", "--method", "real"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        lines(&out),
        [
            "{y = 0, x in (1, inf)}",
            "{x = (1/3)*sqrt(3)*y, y in (-inf, -(1/2)*sqrt(3))}",
            "{x = -(1/3)*sqrt(3)*y, y in ((1/2)*sqrt(3), inf)}",
            "{y = 0, x in (-inf, 1)}",
            "{x = (1/3)*sqrt(3)*y, y in (-(1/2)*sqrt(3), inf)}",
            "{x = -(1/3)*sqrt(3)*y, y in (-inf, (1/2)*sqrt(3))}",
        ]
    );
    assert!(lines(&err).contains(&"warning: branch cuts computed which only occur if a is not an integer"));
}

#[test]
fn single_valued_input_prints_nothing() {
    let (code, out, err) = bccalc(&["exp(z)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert!(err.is_empty());
}

#[test]
fn semialgebraic_mode_prints_systems() {
    let (code, out, _) = bccalc(&[EQ3, "--semialgebraic"]);
    assert_eq!(code, EXIT_OK);
    let got = lines(&out);
    assert_eq!(got.len(), 6);
    for s in ["{x = 0, y <= -1}", "{x = 0, -y <= -1}", "{x^2 - y^2 = 0, 2*x*y <= -1}", "{x^2 - y^2 = 0, -2*x*y <= -1}"]
    {
        assert!(got.contains(&s), "{s}");
    }
}

#[test]
fn classification_is_appended_to_each_line() {
    let (code, out, _) = bccalc(&["log(z+1)-log(z-1)", "--method", "real", "--classify"]);
    assert_eq!(code, EXIT_OK);
    let got = lines(&out);
    assert_eq!(got[0], "{y = 0, x in (-inf, -1)}  [spurious (formulation)]");
    assert!(got[1].starts_with("{y = 0, x in (-inf, 1)}  [mixed: "), "{}", got[1]);
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["log(z"],
        vec!["foo(z)"],
        vec!["log(z)", "--param", "z"],
        vec!["log(z-a)", "--param", "a", "--classify"],
        vec!["log(z-a)", "--param", "a=pi"],
        vec!["log(z)", "--eps", "0"],
        vec!["log(z)", "--samples", "0"],
        vec!["log(z)", "--method", "fast"],
        vec!["log(z)", "--viewport", "1,0,0,1"],
        vec!["log(z-a)"],
    ] {
        let (code, _, err) = bccalc(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn unwritable_output_is_an_internal_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let (code, _, err) = bccalc(&["log(z)", "--json", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INTERNAL);
    assert!(err.starts_with("error: cannot write"));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bccalc");
    let ok = Command::new(bin).arg("log(z^2-1)").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "{x = 0, y free}\n{y = 0, x in (-1, 1)}\n");
    let bad = Command::new(bin).arg("log(").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
}

#[test]
fn writes_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cuts.json");
    let svg = dir.path().join("cuts.svg");
    let (code, _, _) = bccalc(&[
        "log(z+1)-log(z-1)",
        "--method",
        "real",
        "--classify",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--viewport",
        "-3,3,-2,2",
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["expression"], "log(z+1)-log(z-1)");
    assert_eq!(v["variable"], "z");
    assert_eq!(v["method"], "real");
    let cut = &v["cuts"][0];
    assert_eq!(cut["form"], "real_variable");
    assert_eq!(cut["dependent"], "y");
    assert_eq!(cut["solution"], "y = 0");
    assert_eq!(cut["range"]["lo"], "-inf");
    assert_eq!(cut["range"]["hi_open"], true);
    assert_eq!(cut["classification"]["evidence"], NUMERIC_VERDICT);
    assert_eq!(cut["classification"]["tag"], "spurious");
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<?xml") && picture.contains("<svg"));
    assert_eq!(picture.matches("<path").count(), 3);
}

#[test]
fn json_round_trip_reproduces_the_cut_set() {
    let mut cases: Vec<(String, MethodChoice)> = CORPUS.iter().map(|s| (s.to_string(), MethodChoice::Auto)).collect();
    cases.push((KAHAN.to_string(), MethodChoice::Parametric));
    cases.push((KAHAN.to_string(), MethodChoice::Real));
    cases.push(("arcsin(2*z*sqrt(1-z^2))".to_string(), MethodChoice::Real));
    for (s, method) in &cases {
        let cs = bc_c(&ex(s), &Options { method: *method, ..Default::default() });
        let doc = Document::new(s, "z", &method.to_string(), &cs, false);
        let back = Document::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc, "{s}");
        assert_eq!(back.cut_set(), cs, "{s}");
    }
    let e = ex("log(z+1)-log(z-1)");
    let cs =
        classify_cutset(&e, &cuts("log(z+1)-log(z-1)", MethodChoice::Real), &Bindings::new(), &ProbeOptions::default());
    let doc = Document::new("log(z+1)-log(z-1)", "z", "real", &cs, true);
    assert_eq!(Document::from_json(&doc.to_json()).unwrap().cut_set(), cs);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let json = dir.path().join(format!("{k}.json"));
        let svg = dir.path().join(format!("{k}.svg"));
        let (code, out, err) =
            bccalc(&[EQ3, "--classify", "--json", json.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        outputs.push((out, err, std::fs::read(&json).unwrap(), std::fs::read(&svg).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn expression_may_start_with_a_minus() {
    let (code, out, _) = bccalc(&["-log(z)", "--method", "real"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{y = 0, x in (-inf, 0)}\n");
}
