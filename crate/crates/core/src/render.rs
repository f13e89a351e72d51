//! Polylines, SVG figures and the grid discontinuity scan.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algorithms::{BranchCut, CutForm, CutSet};
use crate::classify::CutClass;
use crate::expr::eval::{eval_numeric, Bindings};
use crate::expr::Expr;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Samples per unit length.
    pub resolution: f64,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport { x_min: -4.0, x_max: 4.0, y_min: -4.0, y_max: 4.0, resolution: 100.0 }
    }
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, resolution: f64) -> Result<Self, String> {
        if !(x_min < x_max && y_min < y_max) {
            return Err(format!("empty viewport [{x_min}, {x_max}] x [{y_min}, {y_max}]"));
        }
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(format!("resolution must be positive, got {resolution}"));
        }
        Ok(Viewport { x_min, x_max, y_min, y_max, resolution })
    }

    pub fn contains(&self, p: Complex64) -> bool {
        p.re >= self.x_min && p.re <= self.x_max && p.im >= self.y_min && p.im <= self.y_max
    }

    /// Whether both points lie beyond the same edge, so the segment between them misses the window.
    pub fn same_side_outside(&self, a: Complex64, b: Complex64) -> bool {
        (a.re < self.x_min && b.re < self.x_min)
            || (a.re > self.x_max && b.re > self.x_max)
            || (a.im < self.y_min && b.im < self.y_min)
            || (a.im > self.y_max && b.im > self.y_max)
    }

    /// Spacing bound between consecutive polyline points.
    pub fn max_gap(&self) -> f64 {
        2.0 / self.resolution
    }
}

impl std::str::FromStr for Viewport {
    type Err = String;

    /// `xmin,xmax,ymin,ymax`
    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad viewport value {t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [a, b, c, d] => Viewport::new(a, b, c, d, Viewport::default().resolution),
            _ => Err(format!("viewport needs four comma-separated numbers, got {}", v.len())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    Solid,
    Dashed,
    Dotted,
}

impl Style {
    pub fn of(class: &CutClass) -> Style {
        match class {
            CutClass::True => Style::Solid,
            CutClass::Spurious { .. } => Style::Dashed,
            CutClass::Unclassified | CutClass::Mixed { .. } => Style::Dotted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub style: Style,
}

const MAX_DEPTH: u32 = 18;
/// Largest allowed bulge of a step, as a fraction of the gap bound.
const FLATNESS: f64 = 0.02;

struct Sampler<'a> {
    cut: &'a BranchCut,
    vp: &'a Viewport,
    style: Style,
    /// Parametric cuts are swept in `s` with `a = sinh(s)`.
    param: bool,
    lines: Vec<Polyline>,
    current: Vec<(f64, f64)>,
}

impl Sampler<'_> {
    fn at(&self, s: f64) -> Option<Complex64> {
        let t = if self.param { s.sinh() } else { s };
        self.cut.point_at(t).filter(|p| p.re.is_finite() && p.im.is_finite())
    }

    fn flush(&mut self) {
        let pts = std::mem::take(&mut self.current);
        if pts.len() >= 2 {
            self.lines.push(Polyline { points: pts, style: self.style });
        }
    }

    fn visit(&mut self, p: Option<Complex64>) {
        match p {
            Some(p) if self.vp.contains(p) => self.current.push((p.re, p.im)),
            _ => self.flush(),
        }
    }

    /// When a short step enters or leaves the window, adds the inside point nearest the edge.
    fn cross_edge(&mut self, t0: f64, p0: Option<Complex64>, t1: f64, p1: Option<Complex64>) {
        let (Some(a), Some(b)) = (p0, p1) else { return };
        let entering = !self.vp.contains(a);
        if entering == !self.vp.contains(b) {
            return;
        }
        let (mut lo, mut hi) = (t0, t1);
        let mut inner = if entering { b } else { a };
        for _ in 0..60 {
            let m = 0.5 * (lo + hi);
            let Some(p) = self.at(m) else { return };
            let inside = self.vp.contains(p);
            if inside {
                inner = p;
            }
            if inside != entering {
                lo = m;
            } else {
                hi = m;
            }
        }
        if self.current.last() != Some(&(inner.re, inner.im)) {
            self.current.push((inner.re, inner.im));
        }
    }

    /// Adds the points strictly between `t0` and `t1`, then `t1` itself.
    fn refine(&mut self, t0: f64, p0: Option<Complex64>, t1: f64, p1: Option<Complex64>, depth: u32) {
        let outside = match (p0, p1) {
            (Some(a), Some(b)) => self.vp.same_side_outside(a, b),
            _ => false,
        };
        if outside {
            self.visit(p1);
            return;
        }
        let tm = 0.5 * (t0 + t1);
        let pm = self.at(tm);
        let close = match (p0, pm, p1) {
            (Some(a), Some(m), Some(b)) => {
                (a - b).norm() <= self.vp.max_gap()
                    && segment_distance((m.re, m.im), (a.re, a.im), (b.re, b.im)) <= FLATNESS * self.vp.max_gap()
            }
            _ => false,
        };
        if close || depth >= MAX_DEPTH {
            if close {
                self.cross_edge(t0, p0, t1, p1);
            } else {
                // a singularity or a gap: start a new line
                self.flush();
            }
            self.visit(p1);
            return;
        }
        self.refine(t0, p0, tm, pm, depth + 1);
        self.refine(tm, pm, t1, p1, depth + 1);
    }
}

/// Sweep range for the curve parameter of `cut` restricted to `[lo, hi]`.
fn sweep(cut: &BranchCut, vp: &Viewport, lo: f64, hi: f64) -> Option<(f64, f64, usize)> {
    match &cut.form {
        CutForm::RealVariable { solution, .. } => {
            let (a, b) = match solution.free() {
                crate::poly::Coord::X => (vp.x_min, vp.x_max),
                crate::poly::Coord::Y => (vp.y_min, vp.y_max),
            };
            let (a, b) = (a.max(lo), b.min(hi));
            (a < b).then(|| (a, b, ((b - a) * vp.resolution).ceil().max(1.0) as usize))
        }
        CutForm::Parametric { .. } => {
            // an infinite range of a is swept through a = sinh(s)
            let big = 1e6_f64.asinh();
            let a = if lo.is_finite() { lo.asinh() } else { -big };
            let b = if hi.is_finite() { hi.asinh() } else { big };
            (a < b).then(|| (a, b, (((b - a) * vp.resolution).ceil() as usize).clamp(16, 4000)))
        }
    }
}

fn sample_span(cut: &BranchCut, vp: &Viewport, lo: f64, hi: f64, style: Style) -> Vec<Polyline> {
    let Some((a, b, steps)) = sweep(cut, vp, lo, hi) else { return Vec::new() };
    // stay off the endpoints, where radicands vanish and closed forms may lose precision
    let inset = (b - a) * 1e-9;
    let (a, b) = (a + inset, b - inset);
    let param = matches!(cut.form, CutForm::Parametric { .. });
    let mut sm = Sampler { cut, vp, style, param, lines: Vec::new(), current: Vec::new() };
    let mut prev_s = a;
    let mut prev = sm.at(a);
    sm.visit(prev);
    for k in 1..=steps {
        let s = a + (b - a) * k as f64 / steps as f64;
        let p = sm.at(s);
        sm.refine(prev_s, prev, s, p, 0);
        prev_s = s;
        prev = p;
    }
    sm.flush();
    sm.lines
}

/// Polylines of one cut inside the viewport, styled by its classification.
pub fn sample_cut(cut: &BranchCut, vp: &Viewport) -> Vec<Polyline> {
    let r = cut.range();
    match &cut.classification {
        CutClass::Mixed { segments } => segments
            .iter()
            .flat_map(|s| sample_span(cut, vp, s.range.lo.to_f64(), s.range.hi.to_f64(), Style::of(&s.class)))
            .collect(),
        c => sample_span(cut, vp, r.lo.to_f64(), r.hi.to_f64(), Style::of(c)),
    }
}

const PALETTE: [&str; 8] = ["#1f4e99", "#b3261e", "#2e7d32", "#8e44ad", "#d35400", "#00838f", "#6d4c41", "#37474f"];
const WIDTH: f64 = 600.0;

/// Deterministic SVG figure of a cut set.
pub fn emit_svg(cs: &CutSet, vp: &Viewport) -> String {
    let sx = WIDTH / (vp.x_max - vp.x_min);
    let height = (vp.y_max - vp.y_min) * sx;
    let px = |x: f64, y: f64| ((x - vp.x_min) * sx, (vp.y_max - y) * sx);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.3} {height:.3}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{WIDTH:.3}" height="{height:.3}" fill="white" stroke="#999999" stroke-width="1"/>"##
    );
    if vp.y_min <= 0.0 && vp.y_max >= 0.0 {
        let (x0, y0) = px(vp.x_min, 0.0);
        let (x1, _) = px(vp.x_max, 0.0);
        let _ = writeln!(
            s,
            r##"<line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
        );
    }
    if vp.x_min <= 0.0 && vp.x_max >= 0.0 {
        let (x0, y0) = px(0.0, vp.y_max);
        let (_, y1) = px(0.0, vp.y_min);
        let _ = writeln!(
            s,
            r##"<line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
        );
    }
    for (i, cut) in cs.cuts.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        for line in sample_cut(cut, vp) {
            let dash = match line.style {
                Style::Solid => "",
                Style::Dashed => r#" stroke-dasharray="8,5""#,
                Style::Dotted => r#" stroke-dasharray="2,4""#,
            };
            let mut d = String::new();
            for (k, &(x, y)) in line.points.iter().enumerate() {
                let (u, v) = px(x, y);
                let _ = write!(d, "{}{u:.3},{v:.3}", if k == 0 { "M" } else { " L" });
            }
            let _ = writeln!(
                s,
                r#"<path class="cut cut-{i}" d="{d}" fill="none" stroke="{colour}" stroke-width="2"{dash}/>"#
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let m = v.len() / 2;
    *v.select_nth_unstable_by(m, f64::total_cmp).1
}

/// Midpoints of grid edges across which `e` jumps.
///
/// An edge is marked when its change exceeds ten times the median change of nearby
/// parallel edges and 1e-3 in absolute terms. Edges touching values above 1e6 in
/// modulus (poles) are ignored.
pub fn grid_discontinuity_scan(e: &Expr, vp: &Viewport, params: &Bindings) -> Vec<(f64, f64)> {
    let h = 1.0 / vp.resolution;
    let nx = ((vp.x_max - vp.x_min) * vp.resolution).round() as usize + 1;
    let ny = ((vp.y_max - vp.y_min) * vp.resolution).round() as usize + 1;
    let xs: Vec<f64> = (0..nx).map(|i| vp.x_min + i as f64 * h).collect();
    let rows: Vec<usize> = (0..ny).collect();
    let grid: Vec<Vec<Option<Complex64>>> = crate::par::map(&rows, |&j| {
        let y = vp.y_min + j as f64 * h;
        xs.iter()
            .map(|&x| {
                eval_numeric(e, Complex64::new(x, y), params)
                    .ok()
                    .filter(|w| w.re.is_finite() && w.im.is_finite() && w.norm() <= 1e6)
            })
            .collect()
    });
    let delta = |a: Option<Complex64>, b: Option<Complex64>| match (a, b) {
        (Some(a), Some(b)) => Some((a - b).norm()),
        _ => None,
    };
    // horizontal edges (i,j)-(i+1,j) and vertical edges (i,j)-(i,j+1)
    let hor: Vec<Vec<Option<f64>>> =
        (0..ny).map(|j| (0..nx.saturating_sub(1)).map(|i| delta(grid[j][i], grid[j][i + 1])).collect()).collect();
    let ver: Vec<Vec<Option<f64>>> =
        (0..ny.saturating_sub(1)).map(|j| (0..nx).map(|i| delta(grid[j][i], grid[j + 1][i])).collect()).collect();
    let r = 2isize;
    let marked = |edges: &Vec<Vec<Option<f64>>>, offset: (f64, f64)| -> Vec<(f64, f64)> {
        let rows = edges.len();
        let idx: Vec<usize> = (0..rows).collect();
        crate::par::map(&idx, |&j| {
            let cols = edges[j].len();
            let mut out = Vec::new();
            let mut buf = Vec::with_capacity(25);
            for i in 0..cols {
                let Some(d) = edges[j][i] else { continue };
                if d <= 1e-3 {
                    continue;
                }
                buf.clear();
                for dj in -r..=r {
                    for di in -r..=r {
                        let (jj, ii) = (j as isize + dj, i as isize + di);
                        if jj < 0 || ii < 0 || jj as usize >= rows || ii as usize >= cols {
                            continue;
                        }
                        if let Some(v) = edges[jj as usize][ii as usize] {
                            buf.push(v);
                        }
                    }
                }
                if d > 10.0 * median(&mut buf) {
                    out.push((vp.x_min + (i as f64 + offset.0) * h, vp.y_min + (j as f64 + offset.1) * h));
                }
            }
            out
        })
        .into_iter()
        .flatten()
        .collect()
    };
    let mut pts = marked(&hor, (0.5, 0.0));
    pts.extend(marked(&ver, (0.0, 0.5)));
    pts
}

/// Distance from `p` to the nearest polyline segment.
pub fn distance_to_polylines(p: (f64, f64), lines: &[Polyline]) -> f64 {
    let mut best = f64::INFINITY;
    for l in lines {
        for w in l.points.windows(2) {
            best = best.min(segment_distance(p, w[0], w[1]));
        }
        if let [q] = l.points[..] {
            best = best.min(((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt());
        }
    }
    best
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viewport_parses() {
        let vp: Viewport = "-2,2,-1,3".parse().unwrap();
        assert_eq!((vp.x_min, vp.x_max, vp.y_min, vp.y_max), (-2.0, 2.0, -1.0, 3.0));
        assert!("1,0,0,1".parse::<Viewport>().is_err());
        assert!("1,2,3".parse::<Viewport>().is_err());
    }

    #[test]
    fn empty_set_has_only_axes() {
        let svg = emit_svg(&CutSet::default(), &Viewport::default());
        assert_eq!(svg.matches("<path").count(), 0);
        assert_eq!(svg.matches("class=\"axis\"").count(), 2);
    }

    #[test]
    fn segment_distance_basics() {
        assert!((segment_distance((0.0, 1.0), (-1.0, 0.0), (1.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!((segment_distance((2.0, 0.0), (-1.0, 0.0), (1.0, 0.0)) - 1.0).abs() < 1e-12);
    }
}
