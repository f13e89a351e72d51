//! True / spurious classification of computed cuts by two-sided numeric probing.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algorithms::{BranchCut, CutForm, CutSet, Warning, WarningKind};
use crate::expr::eval::{eval_numeric, Bindings};
use crate::expr::Expr;
use crate::interval::{Bound, ExtInterval};
use crate::num::dyadic_from_f64;
use crate::render::Viewport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpuriousKind {
    DeNesting,
    Formulation,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum CutClass {
    True,
    Spurious { kind: SpuriousKind },
    Unclassified,
    Mixed { segments: Vec<Segment> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub range: ExtInterval,
    pub class: CutClass,
}

impl fmt::Display for SpuriousKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpuriousKind::DeNesting => "de-nesting",
            SpuriousKind::Formulation => "formulation",
            SpuriousKind::Both => "de-nesting and formulation",
        })
    }
}

impl fmt::Display for CutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutClass::True => f.write_str("true"),
            CutClass::Spurious { kind } => write!(f, "spurious ({kind})"),
            CutClass::Unclassified => f.write_str("unclassified"),
            CutClass::Mixed { segments } => {
                f.write_str("mixed:")?;
                for (i, s) in segments.iter().enumerate() {
                    write!(f, "{} {} {}", if i == 0 { "" } else { ";" }, s.range, s.class)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Jump,
    Continuous,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeSample {
    pub t: f64,
    pub point: (f64, f64),
    pub normal: (f64, f64),
    pub left: Option<(f64, f64)>,
    pub right: Option<(f64, f64)>,
    pub jump: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ProbeReport {
    pub samples: Vec<ProbeSample>,
}

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub eps: f64,
    pub n: usize,
    pub jump_threshold: f64,
    pub continuity_threshold: f64,
    /// Cuts are probed only where they pass through this window.
    pub window: Viewport,
    /// Infinite ranges of the parameter `a` are clipped to `[-a_max, a_max]`.
    pub a_max: f64,
    /// Width to which mixed-segment boundaries are bisected.
    pub boundary_width: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            eps: 1e-6,
            n: 33,
            jump_threshold: 1e-3,
            continuity_threshold: 1e-7,
            window: Viewport::default(),
            a_max: 16.0,
            boundary_width: 1e-3,
        }
    }
}

/// Finite parameter span of the part of the cut worth probing.
pub fn probe_span(cut: &BranchCut, opts: &ProbeOptions) -> Option<(f64, f64)> {
    let r = cut.range();
    match &cut.form {
        CutForm::RealVariable { solution, .. } => {
            let (lo, hi) = match solution.free() {
                crate::poly::Coord::X => (opts.window.x_min, opts.window.x_max),
                crate::poly::Coord::Y => (opts.window.y_min, opts.window.y_max),
            };
            r.clip_f64(lo, hi)
        }
        CutForm::Parametric { .. } => r.clip_f64(-opts.a_max, opts.a_max),
    }
}

fn chebyshev(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> =
        (1..=n).map(|k| 0.5 * (a + b) + 0.5 * (b - a) * ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos()).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn unit_normal(cut: &BranchCut, t: f64) -> Option<Complex64> {
    let h = 1e-5 * t.abs().max(1.0);
    let a = cut.point_at(t - h)?;
    let b = cut.point_at(t + h)?;
    let d = b - a;
    let n = d.norm();
    (n > 0.0 && n.is_finite()).then(|| Complex64::new(-d.im, d.re) / n)
}

/// Probe the expression across the cut at parameter `t`.
pub fn probe_at(e: &Expr, cut: &BranchCut, t: f64, params: &Bindings, opts: &ProbeOptions) -> ProbeSample {
    let indeterminate = |p: Complex64, nrm: Complex64| ProbeSample {
        t,
        point: (p.re, p.im),
        normal: (nrm.re, nrm.im),
        left: None,
        right: None,
        jump: f64::NAN,
        verdict: Verdict::Indeterminate,
    };
    let zero = Complex64::new(0.0, 0.0);
    let Some(p) = cut.point_at(t) else { return indeterminate(Complex64::new(f64::NAN, f64::NAN), zero) };
    let Some(nrm) = unit_normal(cut, t) else { return indeterminate(p, zero) };
    let eps = opts.eps;
    let f = |k: f64| eval_numeric(e, p + nrm * (k * eps), params).ok();
    let (Some(r1), Some(l1), Some(r3), Some(l3)) = (f(1.0), f(-1.0), f(3.0), f(-3.0)) else {
        return indeterminate(p, nrm);
    };
    // two-sided difference with the smooth (gradient) part taken out
    let j = (r1 - l1) - 0.5 * ((r3 - r1) + (l1 - l3));
    let jump = j.norm();
    let verdict = if jump > opts.jump_threshold {
        Verdict::Jump
    } else if jump < opts.continuity_threshold {
        Verdict::Continuous
    } else {
        Verdict::Indeterminate
    };
    ProbeSample {
        t,
        point: (p.re, p.im),
        normal: (nrm.re, nrm.im),
        left: Some((l1.re, l1.im)),
        right: Some((r1.re, r1.im)),
        jump,
        verdict,
    }
}

/// `n` Chebyshev-spaced probes along the cut inside the window.
pub fn probe_cut(e: &Expr, cut: &BranchCut, params: &Bindings, opts: &ProbeOptions) -> ProbeReport {
    let Some((a, b)) = probe_span(cut, opts) else { return ProbeReport::default() };
    if b - a <= 0.0 {
        return ProbeReport::default();
    }
    ProbeReport { samples: chebyshev(a, b, opts.n).into_iter().map(|t| probe_at(e, cut, t, params, opts)).collect() }
}

/// Distance from `p` to the cut, estimated numerically.
pub fn distance_to_cut(p: Complex64, cut: &BranchCut, opts: &ProbeOptions) -> f64 {
    match &cut.form {
        CutForm::RealVariable { solution, free_range } => {
            let t = match solution.free() {
                crate::poly::Coord::X => p.re,
                crate::poly::Coord::Y => p.im,
            };
            if !free_range.contains_f64(t) {
                return f64::INFINITY;
            }
            cut.point_at(t).map_or(f64::INFINITY, |q| (q - p).norm())
        }
        CutForm::Parametric { a_range, .. } => {
            let Some((lo, hi)) = a_range.clip_f64(-opts.a_max, opts.a_max) else { return f64::INFINITY };
            let d = |a: f64| cut.point_at(a).map_or(f64::INFINITY, |q| (q - p).norm());
            let steps = 2000;
            let h = (hi - lo) / steps as f64;
            let (mut best, mut arg) = (f64::INFINITY, lo);
            for k in 0..=steps {
                let a = lo + h * k as f64;
                let v = d(a);
                if v < best {
                    best = v;
                    arg = a;
                }
            }
            // golden-section refinement around the best grid point
            let (mut a, mut b) = ((arg - h).max(lo), (arg + h).min(hi));
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..80 {
                let c = b - g * (b - a);
                let dd = a + g * (b - a);
                if d(c) < d(dd) {
                    b = dd;
                } else {
                    a = c;
                }
            }
            best.min(d(0.5 * (a + b)))
        }
    }
}

fn spurious_kind(
    cut: &BranchCut,
    others: &[&BranchCut],
    pts: &[Complex64],
    opts: &ProbeOptions,
) -> Option<SpuriousKind> {
    let tol = 1e-6;
    let overlap = !pts.is_empty()
        && others.iter().any(|o| {
            o.provenance.path != cut.provenance.path
                && pts.iter().filter(|p| distance_to_cut(**p, o, opts) < tol).count() * 2 >= pts.len()
        });
    match (cut.provenance.denested, overlap) {
        (true, true) => Some(SpuriousKind::Both),
        (true, false) => Some(SpuriousKind::DeNesting),
        (false, true) => Some(SpuriousKind::Formulation),
        (false, false) => None,
    }
}

fn verdict_at(e: &Expr, cut: &BranchCut, t: f64, params: &Bindings, opts: &ProbeOptions) -> Verdict {
    probe_at(e, cut, t, params, opts).verdict
}

fn bound_at(t: f64) -> Bound {
    Bound::rat(dyadic_from_f64(t, 20))
}

/// Classification of one cut against the others in its set.
pub fn classify_cut(e: &Expr, cut: &BranchCut, all: &[&BranchCut], params: &Bindings, opts: &ProbeOptions) -> CutClass {
    let report = probe_cut(e, cut, params, opts);
    if report.samples.is_empty() {
        return CutClass::Unclassified;
    }
    // group consecutive samples with the same verdict
    let mut groups: Vec<(Verdict, Vec<&ProbeSample>)> = Vec::new();
    for s in &report.samples {
        match groups.last_mut() {
            Some((v, g)) if *v == s.verdict => g.push(s),
            _ => groups.push((s.verdict, vec![s])),
        }
    }
    let class_of = |v: Verdict, g: &[&ProbeSample]| -> CutClass {
        match v {
            Verdict::Jump => CutClass::True,
            Verdict::Indeterminate => CutClass::Unclassified,
            Verdict::Continuous => {
                let pts: Vec<Complex64> = g.iter().map(|s| Complex64::new(s.point.0, s.point.1)).collect();
                match spurious_kind(cut, all, &pts, opts) {
                    Some(kind) => CutClass::Spurious { kind },
                    None => CutClass::Unclassified,
                }
            }
        }
    };
    if groups.len() == 1 {
        let (v, g) = &groups[0];
        return class_of(*v, g);
    }
    let range = cut.range();
    let mut segments: Vec<Segment> = Vec::new();
    let mut lo = range.lo.clone();
    let mut lo_open = range.lo_open;
    for w in 0..groups.len() {
        let class = class_of(groups[w].0, &groups[w].1);
        let (hi, hi_open) = if w + 1 == groups.len() {
            (range.hi.clone(), range.hi_open)
        } else {
            let mut a = groups[w].1.last().expect("nonempty group").t;
            let mut b = groups[w + 1].1[0].t;
            let left = groups[w].0;
            while b - a > opts.boundary_width {
                let m = 0.5 * (a + b);
                if verdict_at(e, cut, m, params, opts) == left {
                    a = m;
                } else {
                    b = m;
                }
            }
            // the left segment owns the boundary point
            (bound_at(0.5 * (a + b)), false)
        };
        match segments.last_mut() {
            // neighbouring groups may classify the same way (e.g. two spurious kinds merged)
            Some(s) if s.class == class => {
                s.range = ExtInterval::new(s.range.lo.clone(), hi.clone(), s.range.lo_open, hi_open);
            }
            _ => segments.push(Segment { range: ExtInterval::new(lo.clone(), hi.clone(), lo_open, hi_open), class }),
        }
        lo = hi;
        lo_open = true;
    }
    // an isolated point (typically a branch point where the jump shrinks to zero) is
    // absorbed when both neighbours agree
    let mut k = 1;
    while k + 1 < segments.len() {
        let narrow = segments[k].range.length_f64() <= 2.0 * opts.boundary_width;
        if narrow && segments[k - 1].class == segments[k + 1].class {
            let next = segments.remove(k + 1);
            segments.remove(k);
            let s = &mut segments[k - 1];
            s.range = ExtInterval::new(s.range.lo.clone(), next.range.hi, s.range.lo_open, next.range.hi_open);
        } else {
            k += 1;
        }
    }
    if segments.len() == 1 {
        return segments.pop().expect("one segment").class;
    }
    CutClass::Mixed { segments }
}

/// Classifies every cut; unbound parameters leave everything unclassified with a warning.
pub fn classify_cutset(e: &Expr, cs: &CutSet, params: &Bindings, opts: &ProbeOptions) -> CutSet {
    let mut out = cs.clone();
    let e = e.substitute_params(params);
    let unbound = e.params();
    if !unbound.is_empty() {
        for c in &mut out.cuts {
            c.classification = CutClass::Unclassified;
        }
        out.warn(Warning::new(
            WarningKind::Classification,
            format!("classification needs values for {}; cuts left unclassified", unbound.join(", ")),
        ));
        return out;
    }
    let all: Vec<&BranchCut> = cs.cuts.iter().collect();
    let classes = crate::par::map(&cs.cuts, |c| classify_cut(&e, c, &all, params, opts));
    for (c, k) in out.cuts.iter_mut().zip(classes) {
        c.classification = k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_nodes_avoid_endpoints() {
        let v = chebyshev(-1.0, 1.0, 5);
        assert_eq!(v.len(), 5);
        assert!(v[0] > -1.0 && v[4] < 1.0);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
