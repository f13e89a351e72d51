//! Solving plane curves `p(x, y) = 0` for one coordinate in radicals, and restricting
//! the free coordinate by polynomial inequalities.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bifactor::factor_bivariate;
use super::bipoly::{BiPoly, Coord};
use super::factor::irreducible_factors;
use super::frac::{wrap_if_sum, RatFunc};
use super::roots::{sort_distinct, AlgebraicReal};
use super::tower::{self, Surd};
use super::upoly::UPoly;
use crate::interval::{Bound, ExtInterval};
use crate::num::{fmt_rat, int, square_split, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
        }
    }
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Relation::Lt => sign < 0,
            Relation::Le => sign <= 0,
        }
    }
}

/// `dependent = value(free)` where `value` lives in a tower of square roots over `Q(free)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalSolution {
    pub dependent: Coord,
    pub radicands: Vec<Surd<RatFunc>>,
    pub value: Surd<RatFunc>,
}

impl RadicalSolution {
    pub fn free(&self) -> Coord {
        self.dependent.other()
    }

    pub fn constant(dependent: Coord, c: Rat) -> Self {
        RadicalSolution { dependent, radicands: Vec::new(), value: Surd::Base(RatFunc::constant(c)) }
    }

    pub fn is_nested(&self) -> bool {
        self.radicands.len() > 1
    }

    /// Float value of the dependent coordinate, `None` off the real domain or at a pole.
    pub fn eval_f64(&self, t: f64) -> Option<f64> {
        let mut rvals: Vec<f64> = Vec::with_capacity(self.radicands.len());
        for r in &self.radicands {
            let rv = tower::eval_f64(&r.try_map(&|f: &RatFunc| Some(f.eval_f64(t)))?, &rvals);
            let scale = 1.0 + rv.abs();
            if !rv.is_finite() || rv < -1e-9 * scale {
                return None;
            }
            rvals.push(rv);
        }
        let v = tower::eval_f64(&self.value.try_map(&|f: &RatFunc| Some(f.eval_f64(t)))?, &rvals);
        v.is_finite().then_some(v)
    }

    /// The point `(x, y)` at free coordinate `t`.
    pub fn point(&self, t: f64) -> Option<(f64, f64)> {
        let v = self.eval_f64(t)?;
        Some(match self.dependent {
            Coord::X => (v, t),
            Coord::Y => (t, v),
        })
    }

    /// Substitutes the solution into `g(x, y)`, giving an element of the same tower.
    pub fn substitute(&self, g: &BiPoly) -> Surd<RatFunc> {
        let coeffs = g.as_poly_in(self.dependent);
        let level = self.value.level();
        let mut acc = Surd::zero_at(level);
        for c in coeffs.iter().rev() {
            acc = acc.mul(&self.value, &self.radicands).add(&Surd::base_at(RatFunc::from_poly(c.clone()), level));
        }
        acc
    }

    fn numeric(&self, t: &Rat) -> Option<(Vec<Surd<Rat>>, Surd<Rat>)> {
        let f = |r: &RatFunc| r.eval(t);
        let rads = self.radicands.iter().map(|r| r.try_map(&f)).collect::<Option<Vec<_>>>()?;
        let v = self.value.try_map(&f)?;
        Some((rads, v))
    }

    fn valid_at(&self, rads: &[Surd<Rat>]) -> bool {
        rads.iter().all(|r| tower::sign(r, rads).is_some_and(|s| s >= 0))
    }

    pub fn render(&self) -> String {
        render_surd(&self.value, &self.radicands, self.free().name())
    }
}

impl fmt::Display for RadicalSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.dependent, self.render())
    }
}

fn render_surd(x: &Surd<RatFunc>, rads: &[Surd<RatFunc>], var: &str) -> String {
    match x {
        Surd::Base(f) => f.fmt_var(var),
        Surd::Ext(a, b) => {
            let l = x.level();
            let root = match &rads[l - 1] {
                Surd::Base(f) if f.is_poly() => format!("sqrt({})", f.num.fmt_var(var)),
                r => format!("sqrt({})", render_surd(r, rads, var)),
            };
            let bpart = match b.as_ref() {
                Surd::Base(f) => render_times(f, &root, var),
                other if other.is_zero() => String::new(),
                other => format!("{}*{root}", wrap_if_sum(&render_surd(other, rads, var))),
            };
            if b.is_zero() {
                return render_surd(a, rads, var);
            }
            if a.is_zero() {
                return bpart;
            }
            let astr = render_surd(a, rads, var);
            match bpart.strip_prefix('-') {
                Some(rest) => format!("{astr} - {rest}"),
                None => format!("{astr} + {bpart}"),
            }
        }
    }
}

/// `f * root` with `f = c*P/Q`: rendered `c*root*P/Q`.
fn render_times(f: &RatFunc, root: &str, var: &str) -> String {
    let (cn, pn) = f.num.primitive();
    let (cd, pd) = f.den.primitive();
    let c = cn / cd;
    let pn = UPoly::from_bigints(&pn);
    let pd = UPoly::from_bigints(&pd);
    let mut s = String::new();
    if c.is_negative() {
        s.push('-');
    }
    let a = c.abs();
    if !a.is_one() {
        if a.is_integer() {
            s.push_str(&format!("{}*", fmt_rat(&a)));
        } else {
            s.push_str(&format!("({})*", fmt_rat(&a)));
        }
    }
    s.push_str(root);
    if pn.deg() > 0 {
        s.push('*');
        s.push_str(&wrap_if_sum(&pn.fmt_var(var)));
    }
    if pd.deg() > 0 {
        s.push_str(&format!("/{}", wrap_if_sum(&pd.fmt_var(var))));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnsolvedReason {
    /// Degree too high in both coordinates for a closed form.
    Degree { in_x: u32, in_y: u32 },
    /// No general closed form for the roots in `z`.
    DegreeInZ { degree: u32 },
}

impl fmt::Display for UnsolvedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnsolvedReason::Degree { in_x, in_y } => {
                write!(f, "no closed form: degree {in_x} in x and {in_y} in y")
            }
            UnsolvedReason::DegreeInZ { degree } => write!(f, "no closed form for degree {degree} in z"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOutcome {
    pub solutions: Vec<RadicalSolution>,
    pub unsolved: Vec<(BiPoly, UnsolvedReason)>,
}

/// `delta = c*s^2*r`, returned as `(k/d, s, m*r)` so that `sqrt(delta) = (k/d)*s*sqrt(m*r)`.
fn split_sqrt(delta: &UPoly) -> (Rat, UPoly, UPoly) {
    let (c, parts) = delta.squarefree_decomposition();
    let mut s = UPoly::one();
    let mut r = UPoly::one();
    for (i, p) in parts.iter().enumerate() {
        let m = i as u32 + 1;
        s = &s * &p.pow(m / 2);
        if m % 2 == 1 {
            r = &r * p;
        }
    }
    let n: BigInt = c.numer() * c.denom();
    let (k, m) = square_split(&n);
    let coef = Rat::new(k, c.denom().clone());
    let rad = r.scale(&Rat::from_integer(m));
    (coef, s, rad)
}

fn nonneg_everywhere(delta: &UPoly) -> bool {
    if delta.is_zero() {
        return true;
    }
    let (c, parts) = delta.squarefree_decomposition();
    if c.is_negative() {
        return false;
    }
    parts
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .all(|(_, p)| super::roots::isolate_real_roots(p).map(|r| r.is_empty()).unwrap_or(true))
}

fn discriminant_in(p: &BiPoly, dep: Coord) -> Option<UPoly> {
    let c = p.as_poly_in(dep);
    (c.len() == 3).then(|| &(&c[1] * &c[1]) - &(&c[0] * &c[2]).scale(&int(4)))
}

fn is_biquadratic(p: &BiPoly, dep: Coord) -> bool {
    let c = p.as_poly_in(dep);
    c.len() == 5 && c[1].is_zero() && c[3].is_zero()
}

fn solvable(p: &BiPoly, dep: Coord) -> bool {
    let d = p.degree_in(dep);
    d == 1 || d == 2 || (d == 4 && is_biquadratic(p, dep))
}

/// Which coordinate to solve an irreducible factor for, if any.
pub fn orientation(p: &BiPoly) -> Option<Coord> {
    let (dx, dy) = (p.degree_in(Coord::X), p.degree_in(Coord::Y));
    match (solvable(p, Coord::X), solvable(p, Coord::Y)) {
        (false, false) => None,
        (true, false) => Some(Coord::X),
        (false, true) => Some(Coord::Y),
        (true, true) => Some(if dx < dy {
            Coord::X
        } else if dy < dx || dx == 1 {
            Coord::Y
        } else {
            let ok = |c| discriminant_in(p, c).map(|d| nonneg_everywhere(&d)).unwrap_or(false);
            if !ok(Coord::X) && ok(Coord::Y) {
                Coord::Y
            } else {
                Coord::X
            }
        }),
    }
}

/// Closed-form solutions of `sum c[k] v^k = 0` for `v`, degree 1, 2 or biquadratic.
fn closed_forms(c: &[UPoly], dep: Coord) -> Vec<RadicalSolution> {
    let rf = |p: &UPoly| RatFunc::from_poly(p.clone());
    match c.len() {
        2 => {
            vec![RadicalSolution { dependent: dep, radicands: Vec::new(), value: Surd::Base(-(rf(&c[0]) / rf(&c[1]))) }]
        }
        3 => quadratic(&c[2], &c[1], &c[0], dep),
        5 => {
            let mut out = Vec::new();
            for w in quadratic(&c[4], &c[2], &c[0], dep) {
                out.extend(square_roots_of(&w));
            }
            out
        }
        _ => Vec::new(),
    }
}

fn quadratic(a: &UPoly, b: &UPoly, c: &UPoly, dep: Coord) -> Vec<RadicalSolution> {
    let rf = |p: &UPoly| RatFunc::from_poly(p.clone());
    let two_a = rf(&a.scale(&int(2)));
    let center = -(rf(b) / two_a.clone());
    let delta = &(b * b) - &(a * c).scale(&int(4));
    if delta.is_zero() {
        return vec![RadicalSolution { dependent: dep, radicands: Vec::new(), value: Surd::Base(center) }];
    }
    let (k, s, rad) = split_sqrt(&delta);
    let half = RatFunc::from_poly(s.scale(&k)) / two_a;
    if rad.deg() == 0 && rad.lc().is_negative() {
        return Vec::new();
    }
    if rad.deg() == 0 && rad.lc().is_one() {
        // perfect square: two rational branches
        return [half.clone(), -half]
            .into_iter()
            .map(|h| RadicalSolution { dependent: dep, radicands: Vec::new(), value: Surd::Base(center.clone() + h) })
            .collect();
    }
    let rads = vec![Surd::Base(RatFunc::from_poly(rad))];
    [half.clone(), -half]
        .into_iter()
        .map(|h| RadicalSolution {
            dependent: dep,
            radicands: rads.clone(),
            value: Surd::Ext(Box::new(Surd::Base(center.clone())), Box::new(Surd::Base(h))),
        })
        .collect()
}

/// `v = +-sqrt(w)` for a solution `w` of the squared equation.
fn square_roots_of(w: &RadicalSolution) -> Vec<RadicalSolution> {
    match &w.value {
        Surd::Base(f) => {
            // sqrt(P/Q) = sqrt(P*Q)/Q
            let pq = &f.num * &f.den;
            if pq.is_zero() {
                return vec![RadicalSolution { dependent: w.dependent, radicands: Vec::new(), value: w.value.clone() }];
            }
            let (k, s, rad) = split_sqrt(&pq);
            let coef = RatFunc::from_poly(s.scale(&k)) / RatFunc::from_poly(f.den.clone());
            if rad.deg() == 0 && rad.lc().is_negative() {
                return Vec::new();
            }
            if rad.deg() == 0 && rad.lc().is_one() {
                return [coef.clone(), -coef]
                    .into_iter()
                    .map(|c| RadicalSolution { dependent: w.dependent, radicands: Vec::new(), value: Surd::Base(c) })
                    .collect();
            }
            let rads = vec![Surd::Base(RatFunc::from_poly(rad))];
            [coef.clone(), -coef]
                .into_iter()
                .map(|c| RadicalSolution {
                    dependent: w.dependent,
                    radicands: rads.clone(),
                    value: Surd::Ext(Box::new(Surd::zero_at(0)), Box::new(Surd::Base(c))),
                })
                .collect()
        }
        other => {
            let mut rads = w.radicands.clone();
            rads.push(other.clone());
            let l = rads.len();
            let one = Surd::base_at(RatFunc::one(), l - 1);
            [one.clone(), one.neg()]
                .into_iter()
                .map(|b| RadicalSolution {
                    dependent: w.dependent,
                    radicands: rads.clone(),
                    value: Surd::Ext(Box::new(Surd::zero_at(l - 1)), Box::new(b)),
                })
                .collect()
        }
    }
}

/// Solutions of `p = 0` for `dep` with the free coordinate unrestricted except by reality.
pub fn solve_for_variable(p: &BiPoly, dep: Coord) -> SolveOutcome {
    let mut out = SolveOutcome::default();
    let fac = factor_bivariate(p);
    for (f, _) in fac.factors {
        solve_factor(&f, Some(dep), &mut out);
    }
    out
}

/// Solutions of `p = 0`, each irreducible factor solved in its preferred orientation.
pub fn solve_curve(p: &BiPoly) -> SolveOutcome {
    let mut out = SolveOutcome::default();
    let fac = factor_bivariate(p);
    for (f, _) in fac.factors {
        solve_factor(&f, None, &mut out);
    }
    out
}

fn solve_factor(f: &BiPoly, prefer: Option<Coord>, out: &mut SolveOutcome) {
    let dep = match prefer {
        Some(d) if solvable(f, d) => Some(d),
        Some(d) if f.degree_in(d) == 0 && solvable(f, d.other()) => Some(d.other()),
        Some(_) => None,
        None => orientation(f),
    };
    let Some(dep) = dep else {
        out.unsolved
            .push((f.clone(), UnsolvedReason::Degree { in_x: f.degree_in(Coord::X), in_y: f.degree_in(Coord::Y) }));
        return;
    };
    for s in closed_forms(&f.as_poly_in(dep), dep) {
        if !restrict_by_inequalities(&s, &[]).is_empty() {
            out.solutions.push(s);
        }
    }
}

/// Free-coordinate intervals where the solution is real and every `g rel 0` holds.
///
/// Isolated excluded points between kept cells are absorbed unless they are poles.
pub fn restrict_by_inequalities(sol: &RadicalSolution, ineqs: &[(BiPoly, Relation)]) -> Vec<ExtInterval> {
    let subs: Vec<Surd<RatFunc>> = ineqs.iter().map(|(g, _)| sol.substitute(g)).collect();
    let mut pole_polys: Vec<UPoly> = Vec::new();
    let mut radicand_polys: Vec<UPoly> = Vec::new();
    let mut ineq_polys: Vec<Vec<UPoly>> = vec![Vec::new(); ineqs.len()];
    for part in sol.value.base_parts().into_iter().chain(sol.radicands.iter().flat_map(|r| r.base_parts())) {
        if part.den.deg() > 0 {
            pole_polys.push(part.den.clone());
        }
    }
    for r in &sol.radicands {
        let n = r.full_norm(&sol.radicands);
        radicand_polys.push(n.num.clone());
        if n.den.deg() > 0 {
            pole_polys.push(n.den.clone());
        }
        // lower-level parts of nested radicands can change sign too
        for p in r.base_parts() {
            radicand_polys.push(p.num.clone());
        }
    }
    for (k, g) in subs.iter().enumerate() {
        let n = g.full_norm(&sol.radicands);
        ineq_polys[k].push(n.num.clone());
        for p in g.base_parts() {
            ineq_polys[k].push(p.num.clone());
        }
        if n.den.deg() > 0 {
            pole_polys.push(n.den.clone());
        }
    }
    let mut irr: Vec<UPoly> = Vec::new();
    let all = pole_polys.iter().chain(radicand_polys.iter()).chain(ineq_polys.iter().flatten());
    for p in all {
        if p.deg() == 0 {
            continue;
        }
        for f in irreducible_factors(p) {
            if !irr.contains(&f) {
                irr.push(f);
            }
        }
    }
    let mut roots: Vec<AlgebraicReal> = Vec::new();
    for f in &irr {
        roots.extend(AlgebraicReal::roots_of(f));
    }
    sort_distinct(&mut roots);
    let vanishes =
        |polys: &[UPoly], r: &AlgebraicReal| -> bool { polys.iter().any(|p| p.deg() > 0 && r.sign_of(p) == 0) };
    // sample points: one per open cell
    let n = roots.len();
    let mut samples: Vec<Rat> = Vec::with_capacity(n + 1);
    if n == 0 {
        samples.push(Rat::zero());
    } else {
        samples.push(roots[0].interval().lo - Rat::one());
        for i in 0..n - 1 {
            let a = roots[i].interval();
            let b = roots[i + 1].interval();
            let mut mid = (&a.hi + &b.lo) / int(2);
            if a.hi > b.lo {
                let w = |r: &AlgebraicReal| r.refined(&(r.interval().width() / int(1 << 20)));
                mid = (w(&roots[i]).hi + w(&roots[i + 1]).lo) / int(2);
            }
            samples.push(mid);
        }
        samples.push(roots[n - 1].interval().hi + Rat::one());
    }
    let keep: Vec<bool> = samples
        .iter()
        .map(|t| {
            let Some((rads, _)) = sol.numeric(t) else { return false };
            if !sol.valid_at(&rads) {
                return false;
            }
            subs.iter().zip(ineqs).all(|(g, (_, rel))| {
                let gv = match g.try_map(&|f: &RatFunc| f.eval(t)) {
                    Some(v) => v,
                    None => return false,
                };
                tower::sign(&gv, &rads).is_some_and(|s| rel.holds(s))
            })
        })
        .collect();
    let is_pole = |r: &AlgebraicReal| vanishes(&pole_polys, r);
    let closed_at = |r: &AlgebraicReal| -> bool {
        if is_pole(r) {
            return false;
        }
        let mut strict = false;
        let mut weak = false;
        for (k, (_, rel)) in ineqs.iter().enumerate() {
            if vanishes(&ineq_polys[k], r) {
                match rel {
                    Relation::Lt => strict = true,
                    Relation::Le => weak = true,
                }
            }
        }
        !strict && (weak || vanishes(&radicand_polys, r))
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < samples.len() {
        if !keep[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < samples.len() && keep[i + 1] && !is_pole(&roots[i]) {
            i += 1;
        }
        let lo = if start == 0 { Bound::NegInf } else { Bound::Finite(roots[start - 1].clone()) };
        let hi = if i == n { Bound::PosInf } else { Bound::Finite(roots[i].clone()) };
        let lo_open = start == 0 || !closed_at(&roots[start - 1]);
        let hi_open = i == n || !closed_at(&roots[i]);
        out.push(ExtInterval::new(lo, hi, lo_open, hi_open));
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_solved_for_x() {
        let p = BiPoly::from_ints(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]);
        let s = solve_curve(&p);
        assert_eq!(s.solutions.len(), 2);
        assert_eq!(s.solutions[0].dependent, Coord::X);
        let iv = restrict_by_inequalities(&s.solutions[0], &[]);
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].to_string(), "[-1, 1]");
    }

    #[test]
    fn line_restricted_by_inequality() {
        // y = 0 with x^2 - 1 < 0
        let s = RadicalSolution::constant(Coord::Y, Rat::zero());
        let g = BiPoly::from_ints(&[(1, 2, 0), (-1, 0, 2), (-1, 0, 0)]);
        let iv = restrict_by_inequalities(&s, &[(g, Relation::Lt)]);
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].to_string(), "(-1, 1)");
    }

    #[test]
    fn rendering_of_scaled_root() {
        // 4x^2 - 4y^2 - 2 = 0
        let p = BiPoly::from_ints(&[(4, 2, 0), (-4, 0, 2), (-2, 0, 0)]);
        let s = solve_curve(&p);
        let shown: Vec<String> = s.solutions.iter().map(|x| x.to_string()).collect();
        assert!(shown.contains(&"x = (1/2)*sqrt(4*y^2 + 2)".to_string()), "{shown:?}");
    }
}
