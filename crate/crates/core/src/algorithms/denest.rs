//! Squaring away a single layer of square roots.

use num_traits::{One, Signed, Zero};

use crate::expr::subterms::to_rational_function;
use crate::expr::Expr;
use crate::num::{GaussRat, Rat};
use crate::poly::Frac;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DenestError {
    #[error("cannot de-nest `{expr}`: {reason}")]
    NotSupported { expr: String, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Denested {
    /// `p = q^2` (or `q` itself when already rational).
    pub p: Frac<GaussRat>,
    /// Number of squarings applied (0 or 1). Squaring admits both signs of the radical.
    pub squarings: u32,
}

/// `q` rational gives `p = q`; `q` a product of rational factors and half-integer powers
/// of rational functions gives `p = q^2`. Anything else is rejected.
pub fn denest(q: &Expr) -> Result<Denested, DenestError> {
    if let Some(p) = to_rational_function(q) {
        return Ok(Denested { p, squarings: 0 });
    }
    match square(q) {
        Ok(p) => Ok(Denested { p, squarings: 1 }),
        Err(reason) => Err(DenestError::NotSupported { expr: q.to_string(), reason }),
    }
}

fn square(e: &Expr) -> Result<Frac<GaussRat>, String> {
    if let Some(r) = to_rational_function(e) {
        return Ok(r.clone() * r);
    }
    match e {
        Expr::Mul(v) => {
            let mut acc = Frac::one();
            for f in v {
                acc = acc * square(f)?;
            }
            Ok(acc)
        }
        Expr::Pow(b, k) => {
            let twice = k * Rat::from_integer(2.into());
            if !twice.is_integer() {
                return Err(format!("exponent {k} is not a multiple of 1/2"));
            }
            let Some(base) = to_rational_function(b) else {
                return Err(if has_radical(b) {
                    "nested radicals of depth 2 or more".into()
                } else {
                    "radicand is not algebraic".into()
                });
            };
            let n: i64 = twice.to_integer().try_into().map_err(|_| "exponent too large".to_string())?;
            if n < 0 {
                if base.is_zero() {
                    return Err("division by zero".into());
                }
                Ok(base.inv().pow(n.unsigned_abs() as u32))
            } else {
                Ok(base.pow(n as u32))
            }
        }
        Expr::Add(_) => Err("sum containing a radical".into()),
        Expr::Apply { func, .. } => Err(format!("argument contains {func}")),
        _ => Err("unsupported expression".into()),
    }
}

fn has_radical(e: &Expr) -> bool {
    match e {
        Expr::Pow(b, k) => !k.is_integer() || has_radical(b),
        _ => e.children().into_iter().any(has_radical),
    }
}

/// `Some(sign)` when `q = c*sqrt(s)` with `c` a nonzero real constant: the principal
/// square root has nonnegative real part, so `Re(q)` has the sign of `c` (or is zero).
pub fn real_part_sign(q: &Expr) -> Option<i32> {
    let single = |e: &Expr| matches!(e, Expr::Pow(_, k) if *k == crate::num::rat(1, 2));
    match q {
        e if single(e) => Some(1),
        Expr::Mul(v) if v.len() == 2 && single(&v[1]) => match &v[0] {
            Expr::Const(GaussRat { re, im }) if im.is_zero() && !re.is_zero() => {
                Some(if re.is_positive() { 1 } else { -1 })
            }
            _ => None,
        },
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, ParseOptions};
    use crate::poly::GPoly;

    fn p(s: &str) -> Expr {
        parse(s, &ParseOptions::default()).unwrap()
    }

    #[test]
    fn squares_a_scaled_root() {
        let d = denest(&p("2*sqrt(z)")).unwrap();
        assert_eq!(d.squarings, 1);
        let four_z = GPoly::x().scale(&GaussRat::real(Rat::from_integer(4.into())));
        assert_eq!(d.p, Frac::from_poly(four_z));
        assert_eq!(real_part_sign(&p("2*sqrt(z)")), Some(1));
        assert_eq!(real_part_sign(&p("z*sqrt(z)")), None);
    }

    #[test]
    fn rational_is_identity() {
        let d = denest(&p("z^2-1")).unwrap();
        assert_eq!(d.squarings, 0);
        assert!(!d.p.is_one());
    }

    #[test]
    fn depth_two_is_rejected() {
        let e = denest(&p("sqrt(1+sqrt(1+z))")).unwrap_err();
        assert!(e.to_string().contains("depth 2"), "{e}");
    }
}
