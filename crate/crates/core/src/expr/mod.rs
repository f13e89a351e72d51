//! Expression trees over one complex variable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{fmt_rat, GaussRat, Rat};

pub mod eval;
pub mod parse;
pub mod subterms;

pub use eval::{eval_numeric, Bindings, EvalError};
pub use parse::{parse, ParseError, ParseOptions};
pub use subterms::{cut_bearing_subterms, re_im_parts, to_rational_function, ReIm, Subterm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Func {
    Log,
    Exp,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Arcsin,
    Arccos,
    Arctan,
    Arccot,
    Arcsinh,
    Arccosh,
    Arctanh,
    Arccoth,
    BesselJ,
}

impl Func {
    pub const ALL: [Func; 17] = [
        Func::Log,
        Func::Exp,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Arcsin,
        Func::Arccos,
        Func::Arctan,
        Func::Arccot,
        Func::Arcsinh,
        Func::Arccosh,
        Func::Arctanh,
        Func::Arccoth,
        Func::BesselJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Log => "log",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Arcsin => "arcsin",
            Func::Arccos => "arccos",
            Func::Arctan => "arctan",
            Func::Arccot => "arccot",
            Func::Arcsinh => "arcsinh",
            Func::Arccosh => "arccosh",
            Func::Arctanh => "arctanh",
            Func::Arccoth => "arccoth",
            Func::BesselJ => "BesselJ",
        }
    }

    /// Number of leading parameter slots before the main argument.
    pub fn param_slots(self) -> usize {
        match self {
            Func::BesselJ => 1,
            _ => 0,
        }
    }
}

impl FromStr for Func {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "log" | "ln" | "Log" => Func::Log,
            "exp" | "Exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "arcsin" | "asin" => Func::Arcsin,
            "arccos" | "acos" => Func::Arccos,
            "arctan" | "atan" => Func::Arctan,
            "arccot" | "acot" => Func::Arccot,
            "arcsinh" | "asinh" => Func::Arcsinh,
            "arccosh" | "acosh" => Func::Arccosh,
            "arctanh" | "atanh" => Func::Arctanh,
            "arccoth" | "acoth" => Func::Arccoth,
            "BesselJ" | "besselj" => Func::BesselJ,
            _ => return Err(()),
        })
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedConst {
    Pi,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(GaussRat),
    /// The complex variable.
    Var,
    Param(String),
    Named(NamedConst),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, Rat),
    Apply {
        func: Func,
        params: Vec<Expr>,
        arg: Box<Expr>,
    },
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const(GaussRat::real(crate::num::int(n)))
    }

    pub fn rat(r: Rat) -> Expr {
        Expr::Const(GaussRat::real(r))
    }

    pub fn i() -> Expr {
        Expr::Const(GaussRat::i())
    }

    pub fn as_const(&self) -> Option<&GaussRat> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Sum with nested sums flattened and constants combined.
    pub fn add(items: Vec<Expr>) -> Expr {
        let mut c = GaussRat::zero();
        let mut out = Vec::new();
        for it in items {
            match it {
                Expr::Add(v) => {
                    for w in v {
                        match w {
                            Expr::Const(k) => c = c + k,
                            other => out.push(other),
                        }
                    }
                }
                Expr::Const(k) => c = c + k,
                other => out.push(other),
            }
        }
        if !c.is_zero() {
            out.push(Expr::Const(c));
        }
        match out.len() {
            0 => Expr::Const(GaussRat::zero()),
            1 => out.pop().unwrap(),
            _ => Expr::Add(out),
        }
    }

    /// Product with nested products flattened and constants folded in front.
    pub fn mul(items: Vec<Expr>) -> Expr {
        let mut c = GaussRat::one();
        let mut out = Vec::new();
        for it in items {
            match it {
                Expr::Mul(v) => {
                    for w in v {
                        match w {
                            Expr::Const(k) => c = c * k,
                            other => out.push(other),
                        }
                    }
                }
                Expr::Const(k) => c = c * k,
                other => out.push(other),
            }
        }
        if c.is_zero() {
            return Expr::Const(c);
        }
        if out.is_empty() {
            return Expr::Const(c);
        }
        if !c.is_one() {
            out.insert(0, Expr::Const(c));
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Expr::Mul(out)
        }
    }

    pub fn negate(e: Expr) -> Expr {
        Expr::mul(vec![Expr::int(-1), e])
    }

    pub fn minus(a: Expr, b: Expr) -> Expr {
        Expr::add(vec![a, Expr::negate(b)])
    }

    /// `None` when the base is the constant zero and the exponent negative.
    pub fn pow(base: Expr, q: Rat) -> Option<Expr> {
        if q.is_zero() {
            return Some(Expr::int(1));
        }
        if q.is_one() {
            return Some(base);
        }
        if let Expr::Const(c) = &base {
            if q.is_integer() {
                if c.is_zero() {
                    return if q.is_negative() { None } else { Some(base) };
                }
                let n: i64 = q.to_integer().try_into().ok()?;
                let p = c.pow(n.unsigned_abs() as u32);
                return Some(Expr::Const(if n < 0 { GaussRat::one() / p } else { p }));
            }
        }
        Some(Expr::Pow(Box::new(base), q))
    }

    pub fn quotient(a: Expr, b: Expr) -> Option<Expr> {
        Some(Expr::mul(vec![a, Expr::pow(b, -Rat::one())?]))
    }

    pub fn apply(func: Func, params: Vec<Expr>, arg: Expr) -> Expr {
        Expr::Apply { func, params, arg: Box::new(arg) }
    }

    pub fn sqrt(e: Expr) -> Expr {
        Expr::Pow(Box::new(e), crate::num::rat(1, 2))
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Const(_) | Expr::Param(_) | Expr::Named(_) => false,
            Expr::Add(v) | Expr::Mul(v) => v.iter().any(Expr::contains_var),
            Expr::Pow(b, _) => b.contains_var(),
            Expr::Apply { params, arg, .. } => arg.contains_var() || params.iter().any(Expr::contains_var),
        }
    }

    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Param(p) => out.push(p.clone()),
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.collect_params(out)),
            Expr::Pow(b, _) => b.collect_params(out),
            Expr::Apply { params, arg, .. } => {
                arg.collect_params(out);
                params.iter().for_each(|e| e.collect_params(out));
            }
            _ => {}
        }
    }

    /// Replaces bound parameters by their exact values and refolds constants.
    pub fn substitute_params(&self, values: &BTreeMap<String, Rat>) -> Expr {
        match self {
            Expr::Param(p) => match values.get(p) {
                Some(v) => Expr::rat(v.clone()),
                None => self.clone(),
            },
            Expr::Add(v) => Expr::add(v.iter().map(|e| e.substitute_params(values)).collect()),
            Expr::Mul(v) => Expr::mul(v.iter().map(|e| e.substitute_params(values)).collect()),
            Expr::Pow(b, q) => {
                let b2 = b.substitute_params(values);
                Expr::pow(b2.clone(), q.clone()).unwrap_or(Expr::Pow(Box::new(b2), q.clone()))
            }
            Expr::Apply { func, params, arg } => Expr::Apply {
                func: *func,
                params: params.iter().map(|e| e.substitute_params(values)).collect(),
                arg: Box::new(arg.substitute_params(values)),
            },
            _ => self.clone(),
        }
    }

    /// Child subexpressions; for applications the argument comes first, then parameter slots.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Add(v) | Expr::Mul(v) => v.iter().collect(),
            Expr::Pow(b, _) => vec![b.as_ref()],
            Expr::Apply { params, arg, .. } => {
                let mut v = vec![arg.as_ref()];
                v.extend(params.iter());
                v
            }
            _ => Vec::new(),
        }
    }

    pub fn at_path(&self, path: &[usize]) -> Option<&Expr> {
        let mut e = self;
        for &i in path {
            e = *e.children().get(i)?;
        }
        Some(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(_) => 1,
            Expr::Mul(_) => {
                if self.leading_negative() {
                    1
                } else {
                    2
                }
            }
            Expr::Const(c) => {
                if (!c.re.is_zero() && !c.im.is_zero()) || c.re.is_negative() || c.im.is_negative() {
                    1
                } else if (c.im.is_zero() && c.re.is_integer()) || (c.re.is_zero() && c.im.is_one()) {
                    4
                } else {
                    2
                }
            }
            Expr::Pow(_, q) if *q == -Rat::one() => 2,
            Expr::Pow(_, q) if *q == crate::num::rat(1, 2) => 4,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn leading_negative(&self) -> bool {
        match self {
            Expr::Const(c) => c.im.is_zero() && c.re.is_negative() || c.re.is_zero() && c.im.is_negative(),
            Expr::Mul(v) => v.first().is_some_and(|e| e.leading_negative()),
            _ => false,
        }
    }

    /// Negation of an expression whose printed form starts with a minus sign.
    fn negated(&self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c.clone()),
            Expr::Mul(v) => {
                let mut w = v.clone();
                if let Expr::Const(c) = &w[0] {
                    w[0] = Expr::Const(-c.clone());
                }
                Expr::mul(w)
            }
            _ => Expr::negate(self.clone()),
        }
    }

    /// Display using `var` as the name of the complex variable.
    pub fn with_var<'a>(&'a self, var: &'a str) -> Shown<'a> {
        Shown { e: self, var }
    }

    fn fmt_wrapped(&self, min_prec: u8, var: &str) -> String {
        let s = self.with_var(var).to_string();
        if self.precedence() < min_prec {
            format!("({s})")
        } else {
            s
        }
    }
}

fn fmt_exponent(q: &Rat) -> String {
    if q.is_integer() && !q.is_negative() {
        fmt_rat(q)
    } else {
        format!("({})", fmt_rat(q))
    }
}

pub struct Shown<'a> {
    e: &'a Expr,
    var: &'a str,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.with_var("z").fmt(f)
    }
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var;
        let w = |e: &Expr| e.with_var(var).to_string();
        match self.e {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => f.write_str(var),
            Expr::Param(p) => f.write_str(p),
            Expr::Named(NamedConst::Pi) => f.write_str("Pi"),
            Expr::Named(NamedConst::E) => f.write_str("E"),
            Expr::Add(v) => {
                for (k, e) in v.iter().enumerate() {
                    if k == 0 {
                        f.write_str(&w(e))?;
                    } else if e.leading_negative() {
                        write!(f, " - {}", e.negated().fmt_wrapped(2, var))?;
                    } else {
                        write!(f, " + {}", w(e))?;
                    }
                }
                Ok(())
            }
            Expr::Mul(v) => {
                let mut rest: &[Expr] = v;
                if let Some(Expr::Const(c)) = v.first() {
                    if *c == -GaussRat::one() {
                        f.write_str("-")?;
                        rest = &v[1..];
                    }
                }
                let mut num = Vec::new();
                let mut den = Vec::new();
                for e in rest {
                    match e {
                        Expr::Pow(b, q) if *q == -Rat::one() => den.push(b.fmt_wrapped(3, var)),
                        _ => num.push(if num.is_empty() && e.leading_negative() {
                            // first factor may carry the sign unparenthesized
                            format!("-{}", e.negated().fmt_wrapped(3, var))
                        } else {
                            e.fmt_wrapped(3, var)
                        }),
                    }
                }
                if num.is_empty() {
                    num.push("1".into());
                }
                write!(f, "{}", num.join("*"))?;
                for d in den {
                    write!(f, "/{d}")?;
                }
                Ok(())
            }
            Expr::Pow(b, q) => {
                if *q == crate::num::rat(1, 2) {
                    write!(f, "sqrt({})", w(b))
                } else if *q == -Rat::one() {
                    write!(f, "1/{}", b.fmt_wrapped(4, var))
                } else {
                    write!(f, "{}^{}", b.fmt_wrapped(4, var), fmt_exponent(q))
                }
            }
            Expr::Apply { func, params, arg } => {
                write!(f, "{}(", func.name())?;
                for p in params {
                    write!(f, "{}, ", w(p))?;
                }
                write!(f, "{})", w(arg))
            }
        }
    }
}

impl Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let opts = ParseOptions { var: "z".into(), params: Vec::new(), allow_free_params: true };
        parse(&s, &opts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smart_constructors_fold_constants_only() {
        let e = Expr::mul(vec![Expr::int(2), Expr::Var, Expr::int(3)]);
        assert_eq!(e, Expr::Mul(vec![Expr::int(6), Expr::Var]));
        let s = Expr::add(vec![Expr::int(1), Expr::Var, Expr::int(-1)]);
        assert_eq!(s, Expr::Var);
    }
}
