//! Double-precision evaluation with principal branches.

use std::collections::BTreeMap;
use std::f64::consts::{E, FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{Expr, Func, NamedConst};
use crate::num::{rat_to_f64, Rat};

/// Parameter values, exact so they can also be substituted symbolically.
pub type Bindings = BTreeMap<String, Rat>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("parameter `{0}` has no value")]
    Unbound(String),
    #[error("non-finite value (pole or overflow)")]
    NonFinite,
    #[error("order of {0} must be real")]
    ComplexOrder(Func),
}

/// Evaluates `e` at `z`, all multivalued functions on their principal branch.
pub fn eval_numeric(e: &Expr, z: Complex64, params: &Bindings) -> Result<Complex64, EvalError> {
    let v = eval(e, z, params)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite)
    }
}

fn eval(e: &Expr, z: Complex64, params: &Bindings) -> Result<Complex64, EvalError> {
    Ok(match e {
        Expr::Const(c) => c.to_c64(),
        Expr::Var => z,
        Expr::Param(p) => match params.get(p) {
            Some(v) => Complex64::new(rat_to_f64(v), 0.0),
            None => return Err(EvalError::Unbound(p.clone())),
        },
        Expr::Named(NamedConst::Pi) => Complex64::new(PI, 0.0),
        Expr::Named(NamedConst::E) => Complex64::new(E, 0.0),
        Expr::Add(v) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in v {
                acc += eval(t, z, params)?;
            }
            acc
        }
        Expr::Mul(v) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for t in v {
                acc *= eval(t, z, params)?;
            }
            acc
        }
        Expr::Pow(b, q) => {
            let b = eval(b, z, params)?;
            power(b, q)
        }
        Expr::Apply { func, params: ps, arg } => {
            let w = eval(arg, z, params)?;
            match func {
                Func::BesselJ => {
                    let nu = eval(&ps[0], z, params)?;
                    if nu.im.abs() > 1e-300 {
                        return Err(EvalError::ComplexOrder(*func));
                    }
                    bessel_j(nu.re, w)
                }
                f => apply(*f, w),
            }
        }
    })
}

fn power(b: Complex64, q: &Rat) -> Complex64 {
    if q.is_integer() {
        let n: i64 = q.to_integer().try_into().unwrap_or(i64::MAX);
        if n.unsigned_abs() <= 64 {
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..n.unsigned_abs() {
                acc *= b;
            }
            return if n < 0 { Complex64::new(1.0, 0.0) / acc } else { acc };
        }
    }
    if b == Complex64::new(0.0, 0.0) {
        return if rat_to_f64(q) > 0.0 { b } else { Complex64::new(f64::INFINITY, 0.0) };
    }
    (b.ln() * rat_to_f64(q)).exp()
}

/// Principal value of a named function.
pub fn apply(f: Func, w: Complex64) -> Complex64 {
    match f {
        Func::Log => w.ln(),
        Func::Exp => w.exp(),
        Func::Sin => w.sin(),
        Func::Cos => w.cos(),
        Func::Tan => w.tan(),
        Func::Sinh => w.sinh(),
        Func::Cosh => w.cosh(),
        Func::Tanh => w.tanh(),
        Func::Arcsin => w.asin(),
        Func::Arccos => w.acos(),
        Func::Arctan => w.atan(),
        Func::Arccot => Complex64::new(FRAC_PI_2, 0.0) - w.atan(),
        Func::Arcsinh => w.asinh(),
        Func::Arccosh => w.acosh(),
        Func::Arctanh => w.atanh(),
        Func::Arccoth => (Complex64::new(1.0, 0.0) / w).atanh(),
        Func::BesselJ => unreachable!("needs an order"),
    }
}

/// Bessel function of the first kind by its power series; `(w/2)^nu` on the principal branch.
pub fn bessel_j(nu: f64, w: Complex64) -> Complex64 {
    // negative integer orders: J_{-n} = (-1)^n J_n
    if nu < 0.0 && nu.fract() == 0.0 {
        let n = -nu;
        let s = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return bessel_j(n, w) * s;
    }
    let half = w / 2.0;
    let lead = if nu.fract() == 0.0 {
        power(half, &Rat::from_integer((nu as i64).into()))
    } else if half == Complex64::new(0.0, 0.0) {
        if nu > 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        return Complex64::new(f64::INFINITY, 0.0);
    } else {
        (half.ln() * nu).exp()
    };
    let g = statrs::function::gamma::gamma(nu + 1.0);
    let mut term = lead / g;
    let mut sum = term;
    let h2 = -(half * half);
    let mut k = 0.0;
    loop {
        k += 1.0;
        term = term * h2 / (k * (k + nu));
        sum += term;
        if (term.norm() <= 1e-17 * sum.norm() && k > half.norm()) || k > 500.0 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, ParseOptions};

    #[test]
    fn principal_sqrt_of_negative_real() {
        let e = parse("sqrt(z)", &ParseOptions::default()).unwrap();
        let v = eval_numeric(&e, Complex64::new(-4.0, 0.0), &Bindings::new()).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn bessel_half_order_closed_form() {
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        for x in [0.3, 1.0, 2.5, 6.0] {
            let v = bessel_j(0.5, Complex64::new(x, 0.0));
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((v.re - exact).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn unbound_parameter_is_an_error() {
        let o = ParseOptions { params: vec!["a".into()], ..Default::default() };
        let e = parse("z + a", &o).unwrap();
        assert_eq!(eval_numeric(&e, Complex64::new(0.0, 0.0), &Bindings::new()), Err(EvalError::Unbound("a".into())));
    }
}
