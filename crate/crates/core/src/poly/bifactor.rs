//! Bivariate gcd, square-free decomposition and factorization over the rationals.
//!
//! Polynomials are viewed in `y` with coefficients in `Q[x]`; factors are found by
//! specializing `x`, factoring the univariate image and lifting `x`-adically.

use num_traits::{One, Zero};

use super::bipoly::{BiPoly, Coord};
use super::factor::factor;
use super::upoly::UPoly;
use crate::num::{int, Rat};

/// Coefficients in `Q[x]` of increasing powers of `y`.
type YPoly = Vec<UPoly>;

fn ytrim(mut a: YPoly) -> YPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn to_y(p: &BiPoly) -> YPoly {
    ytrim(p.as_poly_in(Coord::Y))
}

fn from_y(a: &YPoly) -> BiPoly {
    BiPoly::from_poly_in(Coord::Y, a)
}

fn ydeg(a: &YPoly) -> usize {
    a.len().saturating_sub(1)
}

fn ymul(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![UPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    ytrim(r)
}

fn ysub(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    let z = UPoly::zero();
    ytrim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn yscale(a: &YPoly, c: &UPoly) -> YPoly {
    ytrim(a.iter().map(|x| x * c).collect())
}

fn yshift_up(a: &YPoly, k: usize) -> YPoly {
    let mut v = vec![UPoly::zero(); k];
    v.extend(a.iter().cloned());
    v
}

/// Monic gcd in `Q[x]` of the coefficients.
pub fn content_y(p: &BiPoly) -> UPoly {
    let a = to_y(p);
    a.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn ycontent(a: &YPoly) -> UPoly {
    a.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn ypp(a: &YPoly) -> YPoly {
    let c = ycontent(a);
    if c.is_zero() {
        return a.clone();
    }
    a.iter().map(|x| x.div_exact(&c).unwrap()).collect()
}

fn ydiv_exact(a: &YPoly, b: &YPoly) -> Option<YPoly> {
    if b.is_empty() {
        return None;
    }
    let mut a = a.clone();
    let db = ydeg(b);
    let lb = b.last().unwrap();
    if a.is_empty() {
        return Some(Vec::new());
    }
    if ydeg(&a) < db {
        return None;
    }
    let mut q = vec![UPoly::zero(); ydeg(&a) - db + 1];
    while !a.is_empty() && ydeg(&a) >= db {
        let k = ydeg(&a) - db;
        let c = a.last().unwrap().div_exact(lb)?;
        a = ysub(&a, &yshift_up(&yscale(b, &c), k));
        q[k] = c;
    }
    if a.is_empty() {
        Some(ytrim(q))
    } else {
        None
    }
}

/// Exact quotient `a / b`, or `None`.
pub fn divide_exact(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    ydiv_exact(&to_y(a), &to_y(b)).map(|q| from_y(&q))
}

fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let mut a = a.clone();
    let db = ydeg(b);
    let lb = b.last().unwrap().clone();
    while !a.is_empty() && ydeg(&a) >= db {
        let k = ydeg(&a) - db;
        let la = a.last().unwrap().clone();
        a = ysub(&yscale(&a, &lb), &yshift_up(&yscale(b, &la), k));
    }
    a
}

fn ygcd(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = ycontent(a).gcd(&ycontent(b));
    let (mut a, mut b) = (ypp(a), ypp(b));
    if ydeg(&a) < ydeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { ypp(&r) };
    }
    yscale(&ypp(&a), &c)
}

/// Greatest common divisor up to a rational constant.
pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    from_y(&ygcd(&to_y(a), &to_y(b))).canonical_equation()
}

/// `p = c * content * prod(parts[i]^(i+1))`, parts square-free and primitive in `y`.
fn squarefree_y(a: &YPoly) -> Vec<YPoly> {
    let deriv =
        |p: &YPoly| -> YPoly { ytrim(p.iter().enumerate().skip(1).map(|(k, c)| c.scale(&int(k as i64))).collect()) };
    let a = ypp(a);
    if ydeg(&a) == 0 {
        return Vec::new();
    }
    let da = deriv(&a);
    let g = ygcd(&a, &da);
    let mut w = ydiv_exact(&a, &g).expect("gcd divides");
    let mut yy = ydiv_exact(&da, &g).expect("gcd divides derivative");
    let mut z = ysub(&yy, &deriv(&w));
    let mut parts = Vec::new();
    while ydeg(&w) > 0 {
        let g = ygcd(&w, &z);
        let nw = ydiv_exact(&w, &g).expect("gcd divides");
        yy = ydiv_exact(&z, &g).expect("gcd divides");
        z = ysub(&yy, &deriv(&nw));
        parts.push(ypp(&g));
        w = nw;
    }
    parts
}

fn shift_x(a: &YPoly, c: &Rat) -> YPoly {
    a.iter().map(|p| p.shift(c)).collect()
}

fn trunc_x(a: &YPoly, k: usize) -> YPoly {
    ytrim(a.iter().map(|p| UPoly::from_coeffs(p.coeffs().iter().take(k).cloned().collect())).collect())
}

fn coeff_x(a: &YPoly, j: usize) -> UPoly {
    UPoly::from_coeffs(a.iter().map(|p| p.coeff(j)).collect())
}

fn from_univariate_y(g: &UPoly) -> YPoly {
    g.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect()
}

/// Power-series inverse of `l` modulo `x^k`, `l(0) != 0`.
fn series_inverse(l: &UPoly, k: usize) -> UPoly {
    let l0 = l.coeff(0);
    let mut inv = vec![Rat::zero(); k];
    inv[0] = Rat::one() / &l0;
    for n in 1..k {
        let mut s = Rat::zero();
        for i in 1..=n {
            s += l.coeff(i) * &inv[n - i];
        }
        inv[n] = -s / &l0;
    }
    UPoly::from_coeffs(inv)
}

/// Lifts `f = g*h mod x`, both monic in `y` and coprime, to `f = G*H mod x^k`.
fn lift_pair(f: &YPoly, g0: &UPoly, h0: &UPoly, k: usize) -> (YPoly, YPoly) {
    let (_, s, t) = g0.ext_gcd(h0);
    let mut g = from_univariate_y(g0);
    let mut h = from_univariate_y(h0);
    for j in 1..k {
        let e = coeff_x(&ysub(f, &trunc_x(&ymul(&g, &h), j + 1)), j);
        if e.is_zero() {
            continue;
        }
        let (q, r) = (&t * &e).divrem(g0);
        let w = &(&s * &e) + &(&q * h0);
        let xj = UPoly::monomial(Rat::one(), j);
        g = ytrim(add_y(&g, &yscale(&from_univariate_y(&r), &xj)));
        h = ytrim(add_y(&h, &yscale(&from_univariate_y(&w), &xj)));
    }
    (g, h)
}

fn add_y(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    let z = UPoly::zero();
    (0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect()
}

fn lift_all(f: &YPoly, gs: &[UPoly], k: usize) -> Vec<YPoly> {
    if gs.len() == 1 {
        return vec![trunc_x(f, k)];
    }
    let rest = gs[1..].iter().fold(UPoly::one(), |a, b| &a * b);
    let (g, h) = lift_pair(f, &gs[0], &rest, k);
    let mut out = vec![g];
    out.extend(lift_all(&h, &gs[1..], k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a square-free `f`, primitive in `y` with positive `y`-degree.
fn hensel_factor(f: &YPoly) -> Vec<YPoly> {
    let n = ydeg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let dx = f.iter().map(|c| c.deg()).max().unwrap_or(0);
    if dx == 0 {
        let u = UPoly::from_coeffs(f.iter().map(|c| c.coeff(0)).collect());
        return factor(&u).factors.into_iter().map(|(g, _)| from_univariate_y(&g)).collect();
    }
    let lc = f.last().unwrap().clone();
    // pick a specialization keeping degree and square-freeness
    let mut x0 = None;
    for k in 0..64i64 {
        let c = if k % 2 == 0 { int(k / 2) } else { int(-(k + 1) / 2) };
        if lc.eval(&c).is_zero() {
            continue;
        }
        let img = UPoly::from_coeffs(f.iter().map(|p| p.eval(&c)).collect());
        if img.deg() == n && img.gcd(&img.derivative()).deg() == 0 {
            x0 = Some((c, img));
            break;
        }
    }
    let (c, img) = x0.expect("a lucky specialization exists");
    let fac = factor(&img);
    if fac.factors.len() == 1 {
        return vec![f.clone()];
    }
    let gs: Vec<UPoly> = fac.factors.iter().map(|(g, _)| g.monic()).collect();
    let fs = shift_x(f, &c);
    let l = fs.last().unwrap().clone();
    let k = dx + l.deg() + 1;
    let linv = series_inverse(&l, k);
    let monic_f = trunc_x(&yscale(&fs, &linv), k);
    let mut lifted = lift_all(&monic_f, &gs, k);
    let mut remaining = fs.clone();
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for comb in combinations(lifted.len(), s) {
            let lr = remaining.last().unwrap().clone();
            let mut cand = vec![lr];
            for &i in &comb {
                cand = trunc_x(&ymul(&cand, &lifted[i]), k);
            }
            let cand = ypp(&cand);
            if ydeg(&cand) == 0 {
                continue;
            }
            if let Some(q) = ydiv_exact(&remaining, &cand) {
                found = Some((comb, cand, q));
                break;
            }
        }
        match found {
            Some((comb, cand, q)) => {
                result.push(cand);
                remaining = ypp(&q);
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !comb.contains(i)).map(|(_, g)| g).collect();
            }
            None => s += 1,
        }
    }
    if ydeg(&remaining) > 0 {
        result.push(ypp(&remaining));
    }
    let back = -c;
    result.iter().map(|r| shift_x(r, &back)).collect()
}

/// `constant * prod(f^m)`, each `f` irreducible over the rationals in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct BiFactorization {
    pub constant: Rat,
    pub factors: Vec<(BiPoly, u32)>,
}

impl BiFactorization {
    pub fn expand(&self) -> BiPoly {
        let mut acc = BiPoly::constant(self.constant.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

fn push_factor(out: &mut Vec<(BiPoly, u32)>, f: BiPoly, m: u32) {
    let f = f.canonical_equation();
    if f.is_constant() {
        return;
    }
    if let Some(e) = out.iter_mut().find(|(g, _)| *g == f) {
        e.1 += m;
    } else {
        out.push((f, m));
    }
}

/// Full factorization of a bivariate polynomial over the rationals.
pub fn factor_bivariate(p: &BiPoly) -> BiFactorization {
    if p.is_zero() {
        return BiFactorization { constant: Rat::zero(), factors: Vec::new() };
    }
    let mut out = Vec::new();
    // monomial part
    let mx = p.terms().map(|(&(i, _), _)| i).min().unwrap_or(0);
    let my = p.terms().map(|(&(_, j), _)| j).min().unwrap_or(0);
    if mx > 0 {
        push_factor(&mut out, BiPoly::x(), mx);
    }
    if my > 0 {
        push_factor(&mut out, BiPoly::y(), my);
    }
    let rest = BiPoly::from_terms(p.terms().map(|(&(i, j), c)| ((i - mx, j - my), c.clone())));
    let a = to_y(&rest);
    // content in x
    let cont = ycontent(&a);
    for (g, m) in factor(&cont).factors {
        push_factor(&mut out, BiPoly::from_upoly(Coord::X, &g), m);
    }
    let prim = ypp(&a);
    for (i, part) in squarefree_y(&prim).iter().enumerate() {
        if ydeg(part) == 0 {
            continue;
        }
        for f in hensel_factor(part) {
            push_factor(&mut out, from_y(&f), i as u32 + 1);
        }
    }
    out.sort_by_key(|a| (a.0.total_degree(), a.0.to_string(), a.1));
    let mut prod = BiPoly::one();
    for (f, m) in &out {
        prod = &prod * &f.pow(*m);
    }
    let constant = p.leading_coeff() / prod.leading_coeff();
    BiFactorization { constant, factors: out }
}
