mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use branchcuts::expr::eval::apply;
use branchcuts::expr::{cut_bearing_subterms, eval_numeric, parse, Bindings, Expr, Func, ParseOptions};
use branchcuts::num::{int, rat};
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// textbook principal values built only from atan2, ln and the polar square root
fn t_log(w: Complex64) -> Complex64 {
    c(w.norm().ln(), w.im.atan2(w.re))
}

fn t_sqrt(w: Complex64) -> Complex64 {
    let (r, th) = (w.norm(), w.im.atan2(w.re));
    c(r.sqrt() * (th / 2.0).cos(), r.sqrt() * (th / 2.0).sin())
}

fn t_arcsin(w: Complex64) -> Complex64 {
    let i = c(0.0, 1.0);
    -i * t_log(i * w + t_sqrt(1.0 - w * w))
}

fn t_arctan(w: Complex64) -> Complex64 {
    let i = c(0.0, 1.0);
    i / 2.0 * (t_log(1.0 - i * w) - t_log(1.0 + i * w))
}

fn t_arctanh(w: Complex64) -> Complex64 {
    (t_log(1.0 + w) - t_log(1.0 - w)) / 2.0
}

fn textbook(f: Func, w: Complex64) -> Option<Complex64> {
    Some(match f {
        Func::Log => t_log(w),
        Func::Arcsin => t_arcsin(w),
        Func::Arccos => FRAC_PI_2 - t_arcsin(w),
        Func::Arctan => t_arctan(w),
        Func::Arccot => FRAC_PI_2 - t_arctan(w),
        Func::Arcsinh => t_log(w + t_sqrt(w * w + 1.0)),
        Func::Arccosh => t_log(w + t_sqrt(w + 1.0) * t_sqrt(w - 1.0)),
        Func::Arctanh => t_arctanh(w),
        Func::Arccoth => t_arctanh(1.0 / w),
        Func::Exp => c(w.re.exp() * w.im.cos(), w.re.exp() * w.im.sin()),
        Func::Sin => c(w.re.sin() * w.im.cosh(), w.re.cos() * w.im.sinh()),
        Func::Cos => c(w.re.cos() * w.im.cosh(), -w.re.sin() * w.im.sinh()),
        _ => return None,
    })
}

fn pinned_points() -> Vec<Complex64> {
    (0..20)
        .map(|k| {
            let r = 0.4 + 0.13 * k as f64;
            let th = 0.3 + 0.29 * k as f64;
            c(r * th.cos(), r * th.sin())
        })
        .collect()
}

#[test]
fn principal_values_match_textbook_formulas() {
    let mut checked = 0;
    for f in Func::ALL {
        for w in pinned_points() {
            let Some(want) = textbook(f, w) else { continue };
            let got = apply(f, w);
            let err = (got - want).norm() / want.norm().max(1.0);
            assert!(err < 1e-12, "{f} at {w}: {got} vs {want} (rel {err:e})");
            checked += 1;
        }
    }
    assert!(checked >= 20 * 12);
}

#[test]
fn sqrt_and_cube_root_are_principal() {
    for w in pinned_points() {
        let s = eval_numeric(&ex("sqrt(z)"), w, &Bindings::new()).unwrap();
        assert!((s - t_sqrt(w)).norm() < 1e-12);
        let r = eval_numeric(&ex("z^(1/3)"), w, &Bindings::new()).unwrap();
        let th = w.im.atan2(w.re) / 3.0;
        let want = c(w.norm().cbrt() * th.cos(), w.norm().cbrt() * th.sin());
        assert!((r - want).norm() < 1e-12);
    }
}

#[test]
fn bessel_order_zero_matches_integral() {
    // J0(w) = (1/pi) int_0^pi cos(w sin t) dt, trapezoid rule on a periodic integrand
    let e = parse("BesselJ(0, z)", &ParseOptions::default()).unwrap();
    for w in pinned_points().into_iter().take(10) {
        let n = 400;
        let sum: Complex64 = (0..n)
            .map(|k| {
                let t = PI * k as f64 / n as f64;
                (w * t.sin()).cos()
            })
            .sum();
        let want = sum / n as f64;
        let got = eval_numeric(&e, w, &Bindings::new()).unwrap();
        assert!((got - want).norm() < 1e-10 * want.norm().max(1.0), "{w}: {got} vs {want}");
    }
}

#[test]
fn parse_examples() {
    assert_eq!(
        ex("log(z^2-1)"),
        Expr::Apply {
            func: Func::Log,
            params: vec![],
            arg: Box::new(Expr::Add(vec![Expr::Pow(Box::new(Expr::Var), int(2)), Expr::int(-1)])),
        }
    );
    assert_eq!(
        ex("log(2*sqrt(z))"),
        Expr::Apply {
            func: Func::Log,
            params: vec![],
            arg: Box::new(Expr::Mul(vec![Expr::int(2), Expr::Pow(Box::new(Expr::Var), rat(1, 2))])),
        }
    );
    match ex("arctan(z) + arctan(z^2)") {
        Expr::Add(items) => {
            assert_eq!(items.len(), 2);
            assert!(items.iter().all(|t| matches!(t, Expr::Apply { func: Func::Arctan, .. })));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn eval_examples() {
    let p = Bindings::new();
    assert!((eval_numeric(&ex("sqrt(z)"), c(4.0, 0.0), &p).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
    let v = eval_numeric(&ex("log(z^2-1)"), c(2.0, 0.0), &p).unwrap();
    assert!((v - c(3f64.ln(), 0.0)).norm() < 1e-15);
    let e = ex("log(z+1)-log(z-1)");
    let above = eval_numeric(&e, c(-2.0, 1e-6), &p).unwrap();
    let below = eval_numeric(&e, c(-2.0, -1e-6), &p).unwrap();
    assert!((above - below).norm() < 1e-4);
}

#[test]
fn subterm_examples() {
    let s = cut_bearing_subterms(&ex("log(z+1)-log(z-1)"));
    assert_eq!(s.len(), 2);
    assert!(s.iter().all(|t| t.label() == "log"));
    assert!(cut_bearing_subterms(&ex("exp(z)")).is_empty());
    let s = cut_bearing_subterms(&ex("log(2*sqrt(z))"));
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].label(), "log");
    // the square root sits inside the log's argument
    assert_eq!(cut_bearing_subterms(s[0].argument())[0].label(), "power 1/2");
}

/// Random expression with a flag saying whether a multivalued node was used.
fn arb_expr() -> impl Strategy<Value = (Expr, bool)> {
    let leaf = prop_oneof![
        Just((Expr::Var, false)),
        (1i64..6).prop_map(|k| (Expr::add(vec![Expr::Var, Expr::int(k)]), false)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|((a, f), (b, g))| (Expr::add(vec![a, b]), f || g)),
            (inner.clone(), inner.clone()).prop_map(|((a, f), (b, g))| (Expr::mul(vec![a, b]), f || g)),
            (inner.clone(), 2i64..4).prop_map(|((a, f), k)| (Expr::pow(a, int(k)).unwrap(), f)),
            (inner.clone(), prop_oneof![Just(Func::Exp), Just(Func::Sin), Just(Func::Cos)])
                .prop_map(|((a, f), h)| (Expr::apply(h, vec![], a), f)),
            (inner.clone(), prop_oneof![Just(Func::Log), Just(Func::Arctan), Just(Func::Arcsin)])
                .prop_map(|((a, _), h)| (Expr::apply(h, vec![], a), true)),
            inner.prop_map(|(a, _)| (Expr::sqrt(a), true)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_identity((e, _) in arb_expr()) {
        let s = e.to_string();
        let back = parse(&s, &ParseOptions::default()).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), s.clone());
        let squeezed: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        prop_assert_eq!(parse(&squeezed, &ParseOptions::default()).unwrap().to_string(), s);
    }

    #[test]
    fn subterms_empty_iff_single_valued((e, multi) in arb_expr()) {
        prop_assert_eq!(cut_bearing_subterms(&e).is_empty(), !multi);
    }
}
