//! Semi-algebraic systems: one equation and one or two inequalities in `x`, `y`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::denest::{denest, DenestError};
use crate::defining_cuts::{Axis, DefiningCut};
use crate::expr::subterms::{re_im_parts, to_rational_function, ReIm};
use crate::expr::Expr;
use crate::interval::{Bound, ExtInterval};
use crate::num::{GaussRat, Rat};
use crate::poly::solve::Relation;
use crate::poly::{BiPoly, Frac};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemiAlgSystem {
    pub equation: BiPoly,
    pub inequalities: Vec<(BiPoly, Relation)>,
}

impl SemiAlgSystem {
    /// `{ Im = 0, Re/den in range }` (real axis) or `{ Re = 0, Im/den in range }` (imaginary axis).
    pub fn from_parts(parts: &ReIm, axis: Axis, range: &ExtInterval) -> Self {
        let (eq, val) = match axis {
            Axis::Real => (&parts.im, &parts.re),
            Axis::Imaginary => (&parts.re, &parts.im),
        };
        let rel = |open: bool| if open { Relation::Lt } else { Relation::Le };
        let mut inequalities = Vec::new();
        if let Some(lo) = range.lo.as_rational() {
            // lo*den - val < 0
            let p = &parts.den.scale(lo) - val;
            inequalities.push((p.canonical_inequality(), rel(range.lo_open)));
        }
        if let Some(hi) = range.hi.as_rational() {
            let p = val - &parts.den.scale(hi);
            inequalities.push((p.canonical_inequality(), rel(range.hi_open)));
        }
        // drop constant inequalities that always hold; false ones make the system empty
        inequalities.retain(|(p, rel)| !(p.is_constant() && rel.holds(sign_of(&p.coeff(0, 0)))));
        SemiAlgSystem { equation: eq.canonical_equation(), inequalities }
    }

    /// Whether some inequality is a false constant, making the set empty.
    pub fn is_trivially_empty(&self) -> bool {
        self.inequalities.iter().any(|(p, rel)| p.is_constant() && !rel.holds(sign_of(&p.coeff(0, 0))))
    }
}

fn sign_of(r: &Rat) -> i32 {
    use num_traits::Signed;
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for SemiAlgSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}", self.equation.fmt_relation("="))?;
        for (p, rel) in &self.inequalities {
            write!(f, ", {}", p.fmt_relation(rel.symbol()))?;
        }
        f.write_str("}")
    }
}

/// Image of a cut range under `t -> t^2` (real axis) or `t -> -t^2` (imaginary axis),
/// as a range on the real axis.
pub fn squared_range(axis: Axis, range: &ExtInterval) -> ExtInterval {
    let sq = |b: &Bound| match b {
        Bound::Finite(_) => {
            let r = b.as_rational().expect("defining cuts have rational ends");
            Bound::rat(r * r)
        }
        _ => Bound::PosInf,
    };
    let sign = |b: &Bound| match b {
        Bound::NegInf => -1,
        Bound::PosInf => 1,
        Bound::Finite(_) => sign_of(b.as_rational().expect("rational end")),
    };
    let (lo_s, hi_s) = (sign(&range.lo), sign(&range.hi));
    let img = if lo_s >= 0 {
        ExtInterval::new(sq(&range.lo), sq(&range.hi), range.lo_open, range.hi_open)
    } else if hi_s <= 0 {
        ExtInterval::new(sq(&range.hi), sq(&range.lo), range.hi_open, range.lo_open)
    } else {
        let (l2, h2) = (sq(&range.lo), sq(&range.hi));
        let (top, open) = match l2.cmp_bound(&h2) {
            std::cmp::Ordering::Greater => (l2, range.lo_open),
            std::cmp::Ordering::Less => (h2, range.hi_open),
            std::cmp::Ordering::Equal => (l2, range.lo_open && range.hi_open),
        };
        ExtInterval::new(Bound::rat(Rat::from_integer(0.into())), top, false, open)
    };
    match axis {
        Axis::Real => img,
        Axis::Imaginary => {
            let neg = |b: &Bound| match b {
                Bound::PosInf => Bound::NegInf,
                Bound::NegInf => Bound::PosInf,
                Bound::Finite(_) => Bound::rat(-b.as_rational().expect("rational end").clone()),
            };
            ExtInterval::new(neg(&img.hi), neg(&img.lo), img.hi_open, img.lo_open)
        }
    }
}

/// The argument prepared for the real-variable method.
#[derive(Clone, Debug)]
pub enum Prepared {
    Rational(Frac<GaussRat>),
    /// `q^2 = p` with `q` the original radical argument.
    Squared(Frac<GaussRat>),
}

pub fn prepare(arg: &Expr) -> Result<Prepared, DenestError> {
    if let Some(p) = to_rational_function(arg) {
        return Ok(Prepared::Rational(p));
    }
    let d = denest(arg)?;
    Ok(Prepared::Squared(d.p))
}

/// One system per defining cut; for squared arguments, cuts whose squared images coincide
/// share a system (the first index is kept).
pub fn systems_for(prep: &Prepared, cuts: &[(usize, DefiningCut)]) -> Vec<(usize, SemiAlgSystem)> {
    let mut out: Vec<(usize, SemiAlgSystem)> = Vec::new();
    match prep {
        Prepared::Rational(p) => {
            let parts = re_im_parts(p);
            for (i, c) in cuts {
                out.push((*i, SemiAlgSystem::from_parts(&parts, c.axis, &c.range)));
            }
        }
        Prepared::Squared(p) => {
            let parts = re_im_parts(p);
            for (i, c) in cuts {
                let img = squared_range(c.axis, &c.range);
                let s = SemiAlgSystem::from_parts(&parts, Axis::Real, &img);
                if !out.iter().any(|(_, t)| *t == s) {
                    out.push((*i, s));
                }
            }
        }
    }
    out.retain(|(_, s)| !s.is_trivially_empty() && !s.equation.is_zero());
    out
}

/// The unsolved systems for `f(arg)`, one per defining cut (and de-nesting image).
pub fn bc_f_sa(cuts: &[(usize, DefiningCut)], arg: &Expr) -> Result<Vec<SemiAlgSystem>, DenestError> {
    let prep = prepare(arg)?;
    Ok(systems_for(&prep, cuts).into_iter().map(|(_, s)| s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defining_cuts::lookup;
    use crate::expr::{parse, Func, ParseOptions};

    fn cuts(f: Func) -> Vec<(usize, DefiningCut)> {
        lookup(f).iter().cloned().enumerate().collect()
    }

    #[test]
    fn log_of_quadratic() {
        let arg = parse("z^2-1", &ParseOptions::default()).unwrap();
        let s = bc_f_sa(&cuts(Func::Log), &arg).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].to_string(), "{x*y = 0, x^2 - y^2 < 1}");
    }

    #[test]
    fn squared_images() {
        let r = |a: i64, b: i64| {
            Bound::rat(Rat::from_integer(a.into())).cmp_bound(&Bound::rat(Rat::from_integer(b.into())))
        };
        assert_eq!(r(0, 0), std::cmp::Ordering::Equal);
        let log = &lookup(Func::Log)[0];
        assert_eq!(squared_range(log.axis, &log.range).to_string(), "(0, inf)");
        let acosh = &lookup(Func::Arccosh)[0];
        assert_eq!(squared_range(acosh.axis, &acosh.range).to_string(), "[0, inf)");
        let atan = &lookup(Func::Arctan)[1];
        assert_eq!(squared_range(atan.axis, &atan.range).to_string(), "(-inf, -1]");
    }
}
