use branchcuts::expr::re_im_parts;
use branchcuts::num::{int, rat, GaussRat, Rat};
use branchcuts::poly::param::solve_in_z_with_parameter;
use branchcuts::poly::roots::{root_bound, sturm_count};
use branchcuts::poly::solve::{restrict_by_inequalities, solve_curve, solve_for_variable, Relation};
use branchcuts::poly::{isolate_real_roots, BiPoly, Coord, Frac, GPoly, UPoly};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn bi(t: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_ints(t)
}

fn f64_of(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// Example 6's f(x, y) = (1-x)y^4 - (2x^3+1)y^2 - x^5 - x^4 + x^2 + x
fn ex6_f() -> BiPoly {
    bi(&[(1, 0, 4), (-1, 1, 4), (-2, 3, 2), (-1, 0, 2), (-1, 5, 0), (-1, 4, 0), (1, 2, 0), (1, 1, 0)])
}

fn check_sound(p: &BiPoly, sols: &[branchcuts::poly::solve::RadicalSolution]) {
    for s in sols {
        assert!(s.substitute(p).is_zero(), "{s} does not annihilate {p}");
        let ranges = restrict_by_inequalities(s, &[]);
        let mut n = 0;
        for r in &ranges {
            let (a, b) = r.clip_f64(-10.0, 10.0).unwrap_or((0.0, 0.0));
            for k in 1..=20 {
                let t = a + (b - a) * k as f64 / 21.0;
                if let Some((x, y)) = s.point(t) {
                    let scale = 1.0 + x.abs().powi(6) + y.abs().powi(6);
                    assert!(p.eval_f64(x, y).abs() < 1e-9 * scale, "{s} at {t}: {}", p.eval_f64(x, y));
                    n += 1;
                }
            }
        }
        assert!(n > 0 || ranges.iter().all(|r| r.length_f64() == 0.0), "{s}: no sample points");
    }
}

#[test]
fn solutions_annihilate_their_polynomials() {
    let polys = [
        bi(&[(2, 1, 1)]),
        bi(&[(1, 2, 0), (-1, 0, 2), (-1, 0, 0)]),
        bi(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]),
        ex6_f(),
        // Kahan's teardrop: (2x+5) y^2 + (x+3)^2 (2x+9) = 0 after clearing
        bi(&[(2, 1, 2), (5, 0, 2), (2, 3, 0), (21, 2, 0), (72, 1, 0), (81, 0, 0)]),
    ];
    for p in &polys {
        let out = solve_curve(p);
        assert!(out.unsolved.is_empty(), "{p}");
        assert!(!out.solutions.is_empty(), "{p}");
        check_sound(p, &out.solutions);
        for dep in [Coord::X, Coord::Y] {
            check_sound(p, &solve_for_variable(p, dep).solutions);
        }
    }
}

#[test]
fn product_solved_for_y() {
    let out = solve_for_variable(&bi(&[(2, 1, 1)]), Coord::Y);
    let mut got: Vec<String> = out.solutions.iter().map(|s| s.to_string()).collect();
    got.sort();
    assert_eq!(got, ["x = 0", "y = 0"]);
}

#[test]
fn example_six_f_is_fully_solved() {
    let out = solve_for_variable(&ex6_f(), Coord::Y);
    assert!(out.unsolved.is_empty());
    assert!(out.solutions.len() >= 2);
}

#[test]
fn irreducible_bicubic_is_unsolved() {
    let p = bi(&[(1, 3, 0), (1, 0, 3), (1, 1, 1), (1, 0, 0)]);
    for dep in [Coord::X, Coord::Y] {
        let out = solve_for_variable(&p, dep);
        assert!(out.solutions.is_empty());
        assert_eq!(out.unsolved.len(), 1);
    }
}

#[test]
fn restriction_examples() {
    let y0 = &solve_for_variable(&bi(&[(1, 0, 1)]), Coord::Y).solutions[0];
    let x0 = &solve_for_variable(&bi(&[(1, 1, 0)]), Coord::X).solutions[0];
    let hyper = bi(&[(1, 2, 0), (-1, 0, 2), (-1, 0, 0)]);
    let show = |v: Vec<branchcuts::interval::ExtInterval>| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
    assert_eq!(show(restrict_by_inequalities(y0, &[(hyper.clone(), Relation::Lt)])), ["(-1, 1)"]);
    assert_eq!(show(restrict_by_inequalities(x0, &[(hyper, Relation::Lt)])), ["(-inf, inf)"]);
    // x > 0 written as -x < 0
    assert_eq!(show(restrict_by_inequalities(y0, &[(bi(&[(-1, 1, 0)]), Relation::Lt)])), ["(0, inf)"]);
}

#[test]
fn isolation_examples() {
    let r = isolate_real_roots(&UPoly::from_ints(&[-1, 0, 1])).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|i| i.is_exact()));
    assert_eq!((r[0].lo.clone(), r[1].lo.clone()), (int(-1), int(1)));
    assert!(isolate_real_roots(&UPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
}

#[test]
fn cubic_roots_agree_with_bisection_scan() {
    // 4x^3 - 3x - 1/2
    let p = UPoly::from_coeffs(vec![rat(-1, 2), int(-3), int(0), int(4)]);
    let f = |x: f64| 4.0 * x * x * x - 3.0 * x - 0.5;
    let step = 1e-6;
    let mut oracle = Vec::new();
    let mut x = -2.0;
    while x < 2.0 {
        if f(x).signum() != f(x + step).signum() {
            let (mut a, mut b) = (x, x + step);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if f(a).signum() == f(m).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            oracle.push(0.5 * (a + b));
        }
        x += step;
    }
    assert_eq!(oracle.len(), 3);
    let ivs = isolate_real_roots(&p).unwrap();
    assert_eq!(ivs.len(), 3);
    for (iv, want) in ivs.iter().zip(&oracle) {
        let fine = branchcuts::poly::roots::refine(&p, iv, &rat(1, 10_000_000_000));
        assert!(f64_of(&fine.width()) <= 1e-10);
        assert!(f64_of(&fine.lo) - 1e-12 <= *want && *want <= f64_of(&fine.hi) + 1e-12);
    }
}

fn gp(re: &[i64]) -> GPoly {
    GPoly::from_coeffs(re.iter().map(|&k| GaussRat::real(int(k))).collect())
}

#[test]
fn parametric_examples() {
    // z^2 - 1 - a
    let out = solve_in_z_with_parameter(&[gp(&[-1, -1]), gp(&[]), gp(&[1])]);
    let mut got: Vec<String> = out.roots.iter().map(|r| r.with_var("a").to_string()).collect();
    got.sort();
    assert_eq!(got, ["-sqrt(a + 1)", "sqrt(a + 1)"]);
    // z - a
    let out = solve_in_z_with_parameter(&[gp(&[0, -1]), gp(&[1])]);
    assert_eq!(out.roots.len(), 1);
    assert_eq!(out.roots[0].with_var("a").to_string(), "a");
    // z^5 + a z + 1
    let out = solve_in_z_with_parameter(&[gp(&[1]), gp(&[0, 1]), gp(&[]), gp(&[]), gp(&[]), gp(&[1])]);
    assert!(out.roots.is_empty());
    assert!(out.unsolved.is_some());
}

fn arb_gpoly() -> impl Strategy<Value = GPoly> {
    prop::collection::vec((-4i64..5, -4i64..5), 1..4)
        .prop_map(|v| GPoly::from_coeffs(v.into_iter().map(|(a, b)| GaussRat::new(int(a), int(b))).collect()))
}

fn horner(p: &GPoly, z: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn re_im_parts_are_exact(num in arb_gpoly(), den in arb_gpoly(), x in -30i64..31, y in -30i64..31) {
        prop_assume!(!den.is_zero());
        let (xr, yr) = (rat(x, 7), rat(y, 7));
        let z = Complex64::new(f64_of(&xr), f64_of(&yr));
        let direct = horner(&num, z) / horner(&den, z);
        prop_assume!(horner(&den, z).norm() > 1e-6);
        let parts = re_im_parts(&Frac::new(num.clone(), den.clone()));
        let d = parts.den.eval(&xr, &yr);
        prop_assume!(!d.is_zero());
        let re = f64_of(&(parts.re.eval(&xr, &yr) / &d));
        let im = f64_of(&(parts.im.eval(&xr, &yr) / &d));
        let err = (Complex64::new(re, im) - direct).norm();
        prop_assert!(err <= 1e-10 * direct.norm().max(1.0), "{} vs {}", Complex64::new(re, im), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn isolation_count_matches_sturm(coeffs in prop::collection::vec(-20i64..21, 2..10)) {
        let p = UPoly::from_ints(&coeffs);
        prop_assume!(p.deg() >= 1);
        let ivs = isolate_real_roots(&p).unwrap();
        let b = root_bound(&p);
        prop_assert_eq!(ivs.len(), sturm_count(&p, &-b.clone(), &b));
        // intervals are disjoint and each holds a root
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for iv in &ivs {
            if iv.is_exact() {
                prop_assert!(p.eval(&iv.lo).is_zero());
            } else {
                prop_assert_eq!(sturm_count(&p, &iv.lo, &iv.hi), 1);
            }
        }
    }

    #[test]
    fn rational_restriction_matches_grid_scan(
        a in -3i64..4, b in -3i64..4,
        g in prop::collection::vec(((-2i64..3), (-2i64..3), (-3i64..4), (-3i64..4)), 1..3),
        strict in any::<bool>(),
    ) {
        // line y = a x + b; inequalities c0 + c1 x + c2 y + c3 x^2 (rel) 0
        let line = bi(&[(1, 0, 1), (-a, 1, 0), (-b, 0, 0)]);
        let sol = solve_for_variable(&line, Coord::Y).solutions[0].clone();
        let rel = if strict { Relation::Lt } else { Relation::Le };
        let ineqs: Vec<(BiPoly, Relation)> =
            g.iter().map(|&(c0, c1, c2, c3)| (bi(&[(c0, 0, 0), (c1, 1, 0), (c2, 0, 1), (c3, 2, 0)]), rel)).collect();
        let ranges = restrict_by_inequalities(&sol, &ineqs);
        let holds = |t: f64| {
            let y = a as f64 * t + b as f64;
            g.iter().all(|&(c0, c1, c2, c3)| {
                let v = c0 as f64 + c1 as f64 * t + c2 as f64 * y + c3 as f64 * t * t;
                if strict { v < 0.0 } else { v <= 0.0 }
            })
        };
        let spans: Vec<(f64, f64)> = ranges.iter().map(|r| (r.lo.to_f64(), r.hi.to_f64())).collect();
        let ends: Vec<f64> = spans.iter().flat_map(|&(l, h)| [l, h]).collect();
        let mut t = -5.0;
        while t <= 5.0 {
            if ends.iter().all(|e| (t - e).abs() > 2e-2) {
                let inside = spans.iter().any(|&(l, h)| l < t && t < h);
                // isolated points are absorbed, so only check away from sign changes of the constraints
                let near_change = [-1e-2, 1e-2].iter().any(|d| holds(t + d) != holds(t));
                if !near_change {
                    prop_assert_eq!(inside, holds(t), "t = {}", t);
                }
            }
            t += 1e-2;
        }
    }
}
