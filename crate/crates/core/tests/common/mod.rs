#![allow(dead_code)]

use std::collections::BTreeSet;

use branchcuts::algorithms::{bc_c, BranchCut, CutSet, MethodChoice, Options};
use branchcuts::expr::{parse, Bindings, Expr, ParseOptions};
use branchcuts::render::{distance_to_polylines, grid_discontinuity_scan, sample_cut, Polyline, Viewport};

pub fn ex(s: &str) -> Expr {
    parse(s, &ParseOptions::default()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn ex_with(s: &str, params: &[&str]) -> Expr {
    let opts = ParseOptions { params: params.iter().map(|p| p.to_string()).collect(), ..Default::default() };
    parse(s, &opts).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn cuts(s: &str, method: MethodChoice) -> CutSet {
    bc_c(&ex(s), &Options { method, ..Default::default() })
}

pub fn texts(cs: &CutSet) -> BTreeSet<String> {
    cs.cuts.iter().map(BranchCut::to_string).collect()
}

pub fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn polylines(cs: &CutSet, vp: &Viewport) -> Vec<Polyline> {
    cs.cuts.iter().flat_map(|c| sample_cut(c, vp)).collect()
}

/// Scan points farther than `tol` from every sampled cut.
pub fn uncovered(e: &Expr, cs: &CutSet, vp: &Viewport, params: &Bindings, tol: f64) -> Vec<(f64, f64)> {
    let lines = polylines(cs, vp);
    grid_discontinuity_scan(e, vp, params).into_iter().filter(|p| distance_to_polylines(*p, &lines) > tol).collect()
}

pub const KAHAN: &str =
    "2*arccosh((3+2*z)/3) - arccosh((5*z+12)/(3*(z+4))) - 2*arccosh(2*(z+3)*sqrt((z+3)/(27*(z+4))))";

pub const EQ3: &str = "arctan(z)+arctan(z^2)-arctan(z*(1+z)/(1-z^3))";

/// Expressions used for corpus-wide properties.
pub const CORPUS: [&str; 25] = [
    "log(z^2-1)",
    "log(z+1)-log(z-1)",
    "arcsin(2*z*sqrt(1-z^2))",
    "log(2*sqrt(z))",
    "sqrt(z^2+1)",
    "sqrt(z^3-1)",
    EQ3,
    "arctan(z)",
    "arcsinh(z^2)",
    "arccosh(2*z+1)",
    "arctanh(z/2)",
    "arccoth(z)",
    "log(z^3-2*z+1)",
    "sqrt(1-z^4)",
    "log(z)+log(z+2)",
    "arcsin(z)+arccos(z)",
    "exp(z)*log(z-1)",
    "z^(1/3)",
    "sqrt(z^2+1)*log(z)",
    "log(1+1/z)",
    "arccot(z^2)",
    "BesselJ(1/2, z)",
    "arctan(1/z)",
    "log(z^2+z+1)",
    "sqrt(z)*sqrt(z+1)",
];

/// `n` points spread evenly by arc length over the polylines.
pub fn resample(lines: &[Polyline], n: usize) -> Vec<(f64, f64)> {
    let seg_len = |a: (f64, f64), b: (f64, f64)| (b.0 - a.0).hypot(b.1 - a.1);
    let total: f64 = lines.iter().flat_map(|l| l.points.windows(2).map(|w| seg_len(w[0], w[1]))).sum();
    if total == 0.0 || n == 0 {
        return lines.iter().flat_map(|l| l.points.iter().copied()).take(n).collect();
    }
    let step = total / (n - 1).max(1) as f64;
    let mut out = Vec::with_capacity(n);
    let mut next = 0.0;
    let mut walked = 0.0;
    for l in lines {
        for w in l.points.windows(2) {
            let d = seg_len(w[0], w[1]);
            while next <= walked + d && out.len() < n {
                let s = if d > 0.0 { (next - walked) / d } else { 0.0 };
                out.push((w[0].0 + s * (w[1].0 - w[0].0), w[0].1 + s * (w[1].1 - w[0].1)));
                next += step;
            }
            walked += d;
        }
    }
    if out.len() < n {
        if let Some(p) = lines.iter().rev().find_map(|l| l.points.last()) {
            out.push(*p);
        }
    }
    out
}

/// Symmetric Hausdorff distance between `n`-point samplings of two drawings.
pub fn hausdorff(a: &[Polyline], b: &[Polyline], n: usize) -> f64 {
    let one_way = |p: &[Polyline], q: &[Polyline]| {
        resample(p, n).into_iter().map(|pt| distance_to_polylines(pt, q)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
