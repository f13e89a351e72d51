//! Closed-form roots of a polynomial in `z` whose coefficients are polynomials in a real
//! parameter `a`. Roots are returned as expressions in which the variable stands for `a`.

use num_traits::{One, Zero};

use super::frac::Frac;
use super::solve::UnsolvedReason;
use super::upoly::{GPoly, UPoly};
use crate::expr::Expr;
use crate::num::{rat, square_split, GaussRat, Rat};

type GFrac = Frac<GaussRat>;

#[derive(Clone, Debug, Default)]
pub struct ParamOutcome {
    pub roots: Vec<Expr>,
    pub unsolved: Option<UnsolvedReason>,
}

fn g(r: Rat) -> GaussRat {
    GaussRat::real(r)
}

fn gf(r: Rat) -> GFrac {
    GFrac::constant(g(r))
}

fn poly_expr(p: &GPoly) -> Expr {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = Expr::pow(Expr::Var, Rat::from_integer(k.into())).expect("nonnegative power");
        terms.push(Expr::mul(vec![Expr::Const(c.clone()), mono]));
    }
    Expr::add(terms)
}

fn frac_expr(f: &GFrac) -> Expr {
    if f.den.is_constant() {
        return poly_expr(&f.num.scale(&(GaussRat::one() / f.den.lc())));
    }
    Expr::quotient(poly_expr(&f.num), poly_expr(&f.den)).expect("nonzero denominator")
}

fn real_part(p: &GPoly) -> Option<UPoly> {
    p.coeffs().iter().all(|c| c.im.is_zero()).then(|| p.map(|c| c.re.clone()))
}

/// `sqrt(f)` as `coef * sqrt(rad)`, with square factors pulled out when the
/// coefficients are real. `rad` is `None` when `f` is a perfect square.
fn split_sqrt(f: &GFrac) -> (GFrac, Option<Expr>) {
    if f.is_zero() {
        return (GFrac::zero(), None);
    }
    // sqrt(N/D) = sqrt(N*D)/D
    let nd = &f.num * &f.den;
    let inv_den = GFrac::from_poly(GPoly::one()) / GFrac::from_poly(f.den.clone());
    let Some(u) = real_part(&nd) else {
        return (inv_den, Some(Expr::sqrt(poly_expr(&nd))));
    };
    let (c, parts) = u.squarefree_decomposition();
    let mut s = UPoly::one();
    let mut r = UPoly::one();
    for (i, p) in parts.iter().enumerate() {
        let m = i as u32 + 1;
        s = &s * &p.pow(m / 2);
        if m % 2 == 1 {
            r = &r * p;
        }
    }
    let n = c.numer() * c.denom();
    let (k, m) = square_split(&n);
    let coef = Rat::new(k, c.denom().clone());
    let rad = r.scale(&Rat::from_integer(m));
    let to_g = |p: &UPoly| p.map(|c| g(c.clone()));
    let coef = GFrac::from_poly(to_g(&s).scale(&g(coef))) * inv_den;
    if rad.deg() == 0 && rad.lc().is_one() {
        return (coef, None);
    }
    if rad.deg() == 0 && rad.lc() == -Rat::one() {
        return (coef * GFrac::constant(GaussRat::i()), None);
    }
    (coef, Some(Expr::sqrt(poly_expr(&to_g(&rad)))))
}

fn sqrt_expr(f: &GFrac) -> Expr {
    let (c, r) = split_sqrt(f);
    match r {
        None => frac_expr(&c),
        Some(r) => Expr::mul(vec![frac_expr(&c), r]),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    Expr::add(vec![a, b])
}

fn mul(a: Expr, b: Expr) -> Expr {
    Expr::mul(vec![a, b])
}

fn div(a: Expr, b: Expr) -> Expr {
    Expr::quotient(a, b).unwrap_or_else(|| Expr::Const(GaussRat::zero()))
}

fn cbrt(e: Expr) -> Expr {
    Expr::pow(e, rat(1, 3)).expect("positive exponent")
}

fn half() -> Expr {
    Expr::rat(rat(1, 2))
}

/// Primitive cube roots of unity `1, w, w^2`.
fn unity_roots() -> [Expr; 3] {
    let s3 = Expr::sqrt(Expr::int(3));
    let im = |sign: i64| mul(Expr::Const(GaussRat::new(Rat::zero(), rat(sign, 2))), s3.clone());
    [Expr::int(1), add(Expr::rat(rat(-1, 2)), im(1)), add(Expr::rat(rat(-1, 2)), im(-1))]
}

fn quadratic_roots(a: &GFrac, b: &GFrac, c: &GFrac) -> Vec<Expr> {
    let two_a = a.clone() * gf(Rat::from_integer(2.into()));
    let center = -(b.clone() / two_a.clone());
    let disc = b.clone() * b.clone() - a.clone() * c.clone() * gf(Rat::from_integer(4.into()));
    if disc.is_zero() {
        return vec![frac_expr(&center)];
    }
    let (coef, rad) = split_sqrt(&disc);
    let half_width = coef / two_a;
    [half_width.clone(), -half_width]
        .into_iter()
        .map(|h| {
            let w = match &rad {
                None => frac_expr(&h),
                Some(r) => mul(frac_expr(&h), r.clone()),
            };
            if center.is_zero() {
                w
            } else {
                add(frac_expr(&center), w)
            }
        })
        .collect()
}

/// Roots of monic `t^3 + b t^2 + c t + d`.
fn cubic_roots(b: &GFrac, c: &GFrac, d: &GFrac) -> Vec<Expr> {
    let k = |n: i64, m: i64| gf(rat(n, m));
    let p = c.clone() - b.clone() * b.clone() * k(1, 3);
    let q = b.pow(3) * k(2, 27) - b.clone() * c.clone() * k(1, 3) + d.clone();
    let shift = -(b.clone() * k(1, 3));
    let omegas = unity_roots();
    let lift = |t: Expr| if shift.is_zero() { t } else { add(t, frac_expr(&shift)) };
    if p.is_zero() {
        let base = cbrt(frac_expr(&(-q)));
        return omegas.iter().map(|w| lift(mul(w.clone(), base.clone()))).collect();
    }
    let disc = q.clone() * q.clone() * k(1, 4) + p.pow(3) * k(1, 27);
    let big_c = cbrt(add(frac_expr(&(-(q * k(1, 2)))), sqrt_expr(&disc)));
    let p_third = frac_expr(&(p * k(1, 3)));
    omegas
        .iter()
        .map(|w| {
            let wc = mul(w.clone(), big_c.clone());
            lift(Expr::minus(wc.clone(), div(p_third.clone(), wc)))
        })
        .collect()
}

/// Roots of monic `t^4 + b t^3 + c t^2 + d t + e`.
fn quartic_roots(b: &GFrac, c: &GFrac, d: &GFrac, e: &GFrac) -> Vec<Expr> {
    let k = |n: i64, m: i64| gf(rat(n, m));
    let p = c.clone() - b.pow(2) * k(3, 8);
    let q = b.pow(3) * k(1, 8) - b.clone() * c.clone() * k(1, 2) + d.clone();
    let r = -(b.pow(4) * k(3, 256)) + b.pow(2) * c.clone() * k(1, 16) - b.clone() * d.clone() * k(1, 4) + e.clone();
    let shift = -(b.clone() * k(1, 4));
    let lift = |t: Expr| if shift.is_zero() { t } else { add(t, frac_expr(&shift)) };
    if q.is_zero() {
        let mut out = Vec::new();
        for s in quadratic_roots(&GFrac::one(), &p, &r) {
            let root = Expr::sqrt(s);
            out.push(lift(root.clone()));
            out.push(lift(Expr::negate(root)));
        }
        return out;
    }
    // resolvent m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0, any root with m != 0
    let m = cubic_roots(&p, &(p.pow(2) * k(1, 4) - r), &(-(q.pow(2) * k(1, 8))))
        .into_iter()
        .next()
        .expect("cubic has roots");
    let s = Expr::sqrt(mul(Expr::int(2), m.clone()));
    let two_p = frac_expr(&(p * k(2, 1)));
    let two_q = frac_expr(&(q * k(2, 1)));
    let mut out = Vec::new();
    for sigma in [1i64, -1] {
        let inner = Expr::negate(Expr::add(vec![
            two_p.clone(),
            mul(Expr::int(2), m.clone()),
            mul(Expr::int(sigma), div(two_q.clone(), s.clone())),
        ]));
        let rt = Expr::sqrt(inner);
        for tau in [1i64, -1] {
            let t = mul(half(), add(mul(Expr::int(sigma), s.clone()), mul(Expr::int(tau), rt.clone())));
            out.push(lift(t));
        }
    }
    out
}

/// Closed-form roots `z(a)` of `sum coeffs[k](a) z^k = 0` for degree at most four.
pub fn solve_in_z_with_parameter(coeffs: &[GPoly]) -> ParamOutcome {
    let mut c: Vec<GFrac> = coeffs.iter().map(|p| GFrac::from_poly(p.clone())).collect();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let mut out = ParamOutcome::default();
    // roots at z = 0
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    if zeros > 0 && zeros < c.len() {
        out.roots.push(Expr::int(0));
        c.drain(..zeros);
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    let lead = c[n].clone();
    let m: Vec<GFrac> = c.iter().map(|x| x.clone() / lead.clone()).collect();
    let roots = match n {
        1 => vec![frac_expr(&(-m[0].clone()))],
        2 => quadratic_roots(&GFrac::one(), &m[1], &m[0]),
        3 => cubic_roots(&m[2], &m[1], &m[0]),
        4 => quartic_roots(&m[3], &m[2], &m[1], &m[0]),
        _ => {
            out.unsolved = Some(UnsolvedReason::DegreeInZ { degree: n as u32 });
            return out;
        }
    };
    out.roots.extend(roots);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval::eval_numeric;
    use num_complex::Complex64;

    fn gp(v: &[i64]) -> GPoly {
        GPoly::from_coeffs(v.iter().map(|&k| g(Rat::from_integer(k.into()))).collect())
    }

    fn check(coeffs: &[GPoly], a: f64) {
        let out = solve_in_z_with_parameter(coeffs);
        assert!(out.unsolved.is_none());
        for r in &out.roots {
            let z = eval_numeric(r, Complex64::new(a, 0.0), &Default::default()).unwrap();
            let mut acc = Complex64::new(0.0, 0.0);
            for c in coeffs.iter().rev() {
                let ca = c.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |s, k| s * a + k.to_c64());
                acc = acc * z + ca;
            }
            assert!(acc.norm() < 1e-8, "residual {acc} for {r} at a={a}");
        }
    }

    #[test]
    fn shifted_square_root() {
        // z^2 - 1 - a
        let out = solve_in_z_with_parameter(&[gp(&[-1, -1]), gp(&[0]), gp(&[1])]);
        let shown: Vec<String> = out.roots.iter().map(|e| e.with_var("a").to_string()).collect();
        assert_eq!(shown, ["sqrt(a + 1)", "-sqrt(a + 1)"]);
    }

    #[test]
    fn cubic_and_quartic_residuals_vanish() {
        // 4(z+3)^3 - 27 a^2 (z+4)
        let cub = [gp(&[108, 0, -108]), gp(&[108, 0, -27]), gp(&[36]), gp(&[4])];
        for a in [-0.7, 0.3, 2.5] {
            check(&cub, a);
        }
        let quart = [gp(&[1, 2]), gp(&[0, -1]), gp(&[3]), gp(&[0, 1]), gp(&[1])];
        for a in [-1.5, 0.25, 3.0] {
            check(&quart, a);
        }
    }

    #[test]
    fn quintic_is_unsolved() {
        let out = solve_in_z_with_parameter(&[gp(&[1]), gp(&[0, 1]), gp(&[0]), gp(&[0]), gp(&[0]), gp(&[1])]);
        assert!(matches!(out.unsolved, Some(UnsolvedReason::DegreeInZ { degree: 5 })));
    }
}
