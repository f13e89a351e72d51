mod common;

use std::f64::consts::PI;

use branchcuts::algorithms::{BranchCut, CutSet, MethodChoice, Options, WarningKind};
use branchcuts::classify::{
    classify_cutset, distance_to_cut, probe_at, probe_cut, CutClass, ProbeOptions, SpuriousKind, Verdict,
};
use branchcuts::defining_cuts::lookup;
use branchcuts::expr::{Bindings, Expr, Func};
use common::*;
use num_complex::Complex64;

fn classified(s: &str, method: MethodChoice, opts: &ProbeOptions) -> (Expr, CutSet) {
    let e = ex(s);
    let cs = branchcuts::algorithms::bc_c(&e, &Options { method, ..Default::default() });
    let out = classify_cutset(&e, &cs, &Bindings::new(), opts);
    (e, out)
}

fn find<'a>(cs: &'a CutSet, text: &str) -> &'a BranchCut {
    cs.cuts.iter().find(|c| c.to_string() == text).unwrap_or_else(|| panic!("no cut {text} in\n{cs}"))
}

/// The leaf classification at curve parameter `t`.
fn class_at(c: &CutClass, t: f64) -> Option<&CutClass> {
    match c {
        CutClass::Mixed { segments } => segments.iter().find(|s| s.range.contains_f64(t)).map(|s| &s.class),
        other => Some(other),
    }
}

fn is_true(c: Option<&CutClass>) -> bool {
    matches!(c, Some(CutClass::True))
}

fn is_spurious(c: Option<&CutClass>) -> bool {
    matches!(c, Some(CutClass::Spurious { .. }))
}

/// Leaf classes with their parameter ranges.
fn leaves(c: &BranchCut) -> Vec<(f64, f64, CutClass)> {
    match &c.classification {
        CutClass::Mixed { segments } => {
            segments.iter().map(|s| (s.range.lo.to_f64(), s.range.hi.to_f64(), s.class.clone())).collect()
        }
        k => vec![(c.range().lo.to_f64(), c.range().hi.to_f64(), k.clone())],
    }
}

const EXAMPLE2: &str = "log(z+1)-log(z-1)";

fn f_eps(eps: &str) -> String {
    format!("log(z+1)-({eps})*log(z-1)")
}

#[test]
fn probe_examples() {
    let opts = ProbeOptions { n: 17, ..Default::default() };
    let params = Bindings::new();
    let (e, cs) = classified(EXAMPLE2, MethodChoice::Real, &ProbeOptions::default());
    let outer = find(&cs, "{y = 0, x in (-inf, -1)}");
    let r = probe_cut(&e, outer, &params, &opts);
    assert_eq!(r.samples.len(), 17);
    assert!(r.samples.iter().all(|s| s.jump < 1e-8 && s.verdict == Verdict::Continuous));
    for s in &r.samples {
        assert!((s.normal.0.hypot(s.normal.1) - 1.0).abs() < 1e-12);
    }

    let inner = find(&cs, "{y = 0, x in (-inf, 1)}");
    for k in 1..17 {
        let t = -1.0 + 2.0 * k as f64 / 17.0;
        let s = probe_at(&e, inner, t, &params, &opts);
        assert_eq!(s.verdict, Verdict::Jump);
        let (l, r) = (s.left.unwrap(), s.right.unwrap());
        assert!((l.1 - r.1).abs() > 6.0 && (l.0 - r.0).abs() < 1e-9, "t = {t}: {l:?} {r:?}");
        assert!((s.jump - 2.0 * PI).abs() < 1e-6, "t = {t}: {}", s.jump);
    }

    let log = ex("log(z)");
    let cs = branchcuts::algorithms::bc_c(&log, &Options::default());
    let r = probe_cut(&log, &cs.cuts[0], &params, &opts);
    assert!(r.samples.iter().all(|s| s.verdict == Verdict::Jump));
}

/// Two-sided difference at offsets +-eps with the linear drift removed, as in the probe.
fn corrected(f: &dyn Fn(Complex64) -> Complex64, x: f64, eps: f64) -> Complex64 {
    let at = |k: f64| f(Complex64::new(x, k * eps));
    (at(1.0) - at(-1.0)) - 0.5 * ((at(3.0) - at(1.0)) + (at(-1.0) - at(-3.0)))
}

#[test]
fn jump_of_example_two_matches_direct_evaluation() {
    let f = |z: Complex64| (z + 1.0).ln() - (z - 1.0).ln();
    let eps = 1e-6;
    let (e, cs) = classified(EXAMPLE2, MethodChoice::Real, &ProbeOptions::default());
    let cut = find(&cs, "{y = 0, x in (-inf, 1)}");
    for x in [-0.9, -0.5, 0.0, 0.3, 0.8] {
        let d = corrected(&f, x, eps);
        assert!(d.re.abs() < 1e-9);
        assert!((d.im.abs() - 2.0 * PI).abs() < 1e-6, "x = {x}: {d}");
        let s = probe_at(&e, cut, x, &Bindings::new(), &ProbeOptions::default());
        assert!((s.jump - d.norm()).abs() < 1e-9, "x = {x}: {} vs {}", s.jump, d.norm());
    }
}

#[test]
fn example_two_classification() {
    let (_, cs) = classified(EXAMPLE2, MethodChoice::Real, &ProbeOptions::default());
    let outer = find(&cs, "{y = 0, x in (-inf, -1)}");
    assert_eq!(outer.classification, CutClass::Spurious { kind: SpuriousKind::Formulation });
    let inner = find(&cs, "{y = 0, x in (-inf, 1)}");
    let CutClass::Mixed { segments } = &inner.classification else { panic!("{}", inner.classification) };
    assert_eq!(segments.len(), 2);
    assert_eq!(segments[0].class, CutClass::Spurious { kind: SpuriousKind::Formulation });
    assert_eq!(segments[1].class, CutClass::True);
    let boundary = segments[0].range.hi.to_f64();
    assert!((boundary + 1.0).abs() <= 1e-3, "{boundary}");
}

#[test]
fn de_nesting_cut_of_log_root() {
    let (_, cs) = classified("log(2*sqrt(z))", MethodChoice::Real, &ProbeOptions::default());
    assert_eq!(
        find(&cs, "{y = 0, x in (0, inf)}").classification,
        CutClass::Spurious { kind: SpuriousKind::DeNesting }
    );
    assert_eq!(find(&cs, "{y = 0, x in (-inf, 0)}").classification, CutClass::True);
}

#[test]
fn perturbed_coefficient_makes_every_cut_true() {
    for eps in ["9/10", "11/10"] {
        let (_, cs) = classified(&f_eps(eps), MethodChoice::Real, &ProbeOptions::default());
        assert_eq!(cs.cuts.len(), 2);
        for c in &cs.cuts {
            assert_eq!(c.classification, CutClass::True, "{eps}: {c}");
        }
    }
}

#[test]
fn true_region_beyond_minus_one_is_empty_only_for_unit_coefficient() {
    for (eps, expect_true) in [("1", false), ("9/10", true), ("11/10", true)] {
        let (_, cs) = classified(&f_eps(eps), MethodChoice::Real, &ProbeOptions::default());
        let any_true = cs.cuts.iter().any(|c| {
            (1..40).any(|k| {
                let x = -1.0 - 0.1 * k as f64;
                c.range().contains_f64(x) && is_true(class_at(&c.classification, x))
            })
        });
        assert_eq!(any_true, expect_true, "eps = {eps}");
    }
}

#[test]
fn arctan_relation_cuts_are_all_true() {
    let (_, cs) = classified(EQ3, MethodChoice::Auto, &ProbeOptions::default());
    assert!(!cs.cuts.is_empty());
    for c in &cs.cuts {
        assert_eq!(c.classification, CutClass::True, "{c}");
    }
}

#[test]
fn single_functions_of_z_have_true_cuts() {
    let mut exprs: Vec<String> = Func::ALL
        .iter()
        .filter(|f| !lookup(**f).is_empty())
        .map(|f| if *f == Func::BesselJ { "BesselJ(1/3, z)".to_string() } else { format!("{}(z)", f.name()) })
        .collect();
    exprs.extend(["z^(1/3)".to_string(), "sqrt(z)".to_string()]);
    for s in &exprs {
        let (_, cs) = classified(s, MethodChoice::Auto, &ProbeOptions::default());
        assert!(!cs.cuts.is_empty(), "{s}");
        for c in &cs.cuts {
            assert_eq!(c.classification, CutClass::True, "{s}: {c}");
        }
    }
}

const GOLDEN: [&str; 7] = [
    EXAMPLE2,
    "log(2*sqrt(z))",
    "log(z+1)-(9/10)*log(z-1)",
    "log(z+1)-(11/10)*log(z-1)",
    "log(z^2-1)",
    "arcsin(2*z*sqrt(1-z^2))",
    EQ3,
];

#[test]
fn refinement_never_swaps_true_and_spurious() {
    let coarse = ProbeOptions::default();
    let fine = ProbeOptions { n: coarse.n * 2, eps: coarse.eps / 2.0, ..coarse.clone() };
    for s in GOLDEN {
        let (_, a) = classified(s, MethodChoice::Real, &coarse);
        let (_, b) = classified(s, MethodChoice::Real, &fine);
        assert_eq!(a.cuts.len(), b.cuts.len());
        for (ca, cb) in a.cuts.iter().zip(&b.cuts) {
            let (lo, hi) = (ca.range().lo.to_f64().max(-4.0), ca.range().hi.to_f64().min(4.0));
            for k in 1..200 {
                let t = lo + (hi - lo) * k as f64 / 200.0;
                let near_boundary = leaves(ca)
                    .iter()
                    .chain(leaves(cb).iter())
                    .any(|(l, h, _)| (t - l).abs() < 3e-3 || (t - h).abs() < 3e-3);
                if near_boundary {
                    continue;
                }
                let (x, y) = (class_at(&ca.classification, t), class_at(&cb.classification, t));
                let flipped = (is_true(x) && is_spurious(y)) || (is_spurious(x) && is_true(y));
                assert!(!flipped, "{s} {ca} at {t}: {x:?} vs {y:?}");
            }
        }
    }
}

#[test]
fn mixed_segments_partition_the_range() {
    let mut mixed = 0;
    for s in GOLDEN.iter().chain(CORPUS.iter()) {
        let (_, cs) = classified(s, MethodChoice::Real, &ProbeOptions::default());
        for c in &cs.cuts {
            let CutClass::Mixed { segments } = &c.classification else { continue };
            mixed += 1;
            assert!(segments.len() >= 2);
            assert_eq!(segments[0].range.lo, c.range().lo, "{s} {c}");
            assert_eq!(segments.last().unwrap().range.hi, c.range().hi, "{s} {c}");
            for w in segments.windows(2) {
                assert_eq!(w[0].range.hi, w[1].range.lo, "{s} {c}");
                assert!(!w[0].range.hi_open && w[1].range.lo_open, "{s} {c}: boundary owned twice or never");
                assert_ne!(w[0].class, w[1].class);
            }
        }
    }
    assert!(mixed >= 1);
}

#[test]
fn spurious_kind_agrees_with_provenance() {
    let opts = ProbeOptions::default();
    for s in GOLDEN.iter().chain(CORPUS.iter()) {
        let (_, cs) = classified(s, MethodChoice::Real, &opts);
        for c in &cs.cuts {
            for (lo, hi, class) in leaves(c) {
                let CutClass::Spurious { kind } = class else { continue };
                if matches!(kind, SpuriousKind::DeNesting | SpuriousKind::Both) {
                    assert!(c.provenance.denested, "{s} {c}");
                }
                if matches!(kind, SpuriousKind::Formulation | SpuriousKind::Both) {
                    let t = 0.5 * (lo.max(-4.0) + hi.min(4.0));
                    let p = c.point_at(t).unwrap();
                    let overlapped = cs
                        .cuts
                        .iter()
                        .any(|o| o.provenance.path != c.provenance.path && distance_to_cut(p, o, &opts) < 1e-6);
                    assert!(overlapped, "{s} {c}");
                }
            }
        }
    }
}

#[test]
fn unbound_parameters_leave_cuts_unclassified() {
    let e = ex_with("log(z-a)", &["a"]);
    let cs = branchcuts::algorithms::bc_c(&e, &Options::default());
    let out = classify_cutset(&e, &cs, &Bindings::new(), &ProbeOptions::default());
    assert!(out.cuts.iter().all(|c| c.classification == CutClass::Unclassified));
    assert!(out.warnings.iter().any(|w| w.kind == WarningKind::Classification));
}

#[test]
fn display_of_classes() {
    assert_eq!(CutClass::True.to_string(), "true");
    assert_eq!(CutClass::Spurious { kind: SpuriousKind::Both }.to_string(), "spurious (de-nesting and formulation)");
    assert_eq!(CutClass::Unclassified.to_string(), "unclassified");
}
