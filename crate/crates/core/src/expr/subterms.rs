//! Locating cut-bearing subterms and converting rational parts to polynomials.

use num_traits::{One, Zero};

use super::Expr;
use crate::defining_cuts::has_cuts;
use crate::num::{GaussRat, Rat};
use crate::poly::{BiPoly, Frac, GPoly};

/// An outermost cut-bearing node: either a function application or a power with non-integer exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Subterm {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub node: Expr,
}

impl Subterm {
    /// The argument the cut conditions apply to.
    pub fn argument(&self) -> &Expr {
        match &self.node {
            Expr::Apply { arg, .. } => arg,
            Expr::Pow(b, _) => b,
            _ => unreachable!("subterm is always cut-bearing"),
        }
    }

    pub fn label(&self) -> String {
        match &self.node {
            Expr::Apply { func, .. } => func.name().to_string(),
            Expr::Pow(_, q) => format!("power {}", crate::num::fmt_rat(q)),
            _ => String::new(),
        }
    }
}

/// Cut-bearing subterms not nested inside another cut-bearing subterm, in left-to-right order.
pub fn cut_bearing_subterms(e: &Expr) -> Vec<Subterm> {
    let mut out = Vec::new();
    walk(e, &mut Vec::new(), &mut out);
    out
}

fn walk(e: &Expr, path: &mut Vec<usize>, out: &mut Vec<Subterm>) {
    if has_cuts(e) && e.contains_var() {
        out.push(Subterm { path: path.clone(), node: e.clone() });
        return;
    }
    for (i, c) in e.children().into_iter().enumerate() {
        path.push(i);
        walk(c, path, out);
        path.pop();
    }
}

/// `num/den` in `z` with Gaussian-rational coefficients, if `e` is a rational function of `z`.
pub fn to_rational_function(e: &Expr) -> Option<Frac<GaussRat>> {
    Some(match e {
        Expr::Const(c) => Frac::constant(c.clone()),
        Expr::Var => Frac::from_poly(GPoly::x()),
        Expr::Add(v) => {
            let mut acc = Frac::zero();
            for t in v {
                acc = acc + to_rational_function(t)?;
            }
            acc
        }
        Expr::Mul(v) => {
            let mut acc = Frac::one();
            for t in v {
                acc = acc * to_rational_function(t)?;
            }
            acc
        }
        Expr::Pow(b, q) if q.is_integer() => {
            let f = to_rational_function(b)?;
            let n: i64 = q.to_integer().try_into().ok()?;
            if n < 0 {
                if f.is_zero() {
                    return None;
                }
                f.inv().pow(n.unsigned_abs() as u32)
            } else {
                f.pow(n as u32)
            }
        }
        _ => return None,
    })
}

/// Real part, imaginary part and common denominator over `z = x + i*y`: `e = (re + i*im)/den`, `den > 0` off poles.
#[derive(Clone, Debug, PartialEq)]
pub struct ReIm {
    pub re: BiPoly,
    pub im: BiPoly,
    pub den: BiPoly,
}

/// `p(x + i*y)` split into real and imaginary polynomials.
pub fn split_complex_poly(p: &GPoly) -> (BiPoly, BiPoly) {
    let (mut re, mut im) = (BiPoly::zero(), BiPoly::zero());
    let x = BiPoly::x();
    let y = BiPoly::y();
    for c in p.coeffs().iter().rev() {
        // (re + i im)(x + i y) + c
        let nre = &(&re * &x) - &(&im * &y);
        let nim = &(&re * &y) + &(&im * &x);
        re = &nre + &BiPoly::constant(c.re.clone());
        im = &nim + &BiPoly::constant(c.im.clone());
    }
    (re, im)
}

pub fn re_im_parts(f: &Frac<GaussRat>) -> ReIm {
    let (nr, ni) = split_complex_poly(&f.num);
    let (dr, di) = split_complex_poly(&f.den);
    if f.den.deg() == 0 {
        // constant denominator: divide through directly
        let d = f.den.lc();
        let inv = GaussRat::one() / d;
        let (ar, ai) = (inv.re.clone(), inv.im.clone());
        let re = &nr.scale(&ar) - &ni.scale(&ai);
        let im = &nr.scale(&ai) + &ni.scale(&ar);
        return ReIm { re, im, den: BiPoly::constant(Rat::one()) };
    }
    let re = &(&nr * &dr) + &(&ni * &di);
    let im = &(&ni * &dr) - &(&nr * &di);
    let den = &(&dr * &dr) + &(&di * &di);
    ReIm { re, im, den }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, ParseOptions};

    #[test]
    fn outermost_only() {
        let e = parse("log(z+1) + arcsin(2*z*sqrt(1-z^2))", &ParseOptions::default()).unwrap();
        let s = cut_bearing_subterms(&e);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].label(), "log");
        assert_eq!(s[1].label(), "arcsin");
    }

    #[test]
    fn re_im_of_square() {
        let e = parse("z^2 - 1", &ParseOptions::default()).unwrap();
        let r = re_im_parts(&to_rational_function(&e).unwrap());
        assert_eq!(r.re, BiPoly::from_ints(&[(1, 2, 0), (-1, 0, 2), (-1, 0, 0)]));
        assert_eq!(r.im, BiPoly::from_ints(&[(2, 1, 1)]));
    }
}
