//! Recursive-descent parser for the expression grammar (see `docs/grammar.md`).

use num_traits::Zero;

use super::{Expr, Func, NamedConst};
use crate::num::{parse_rat, GaussRat, Rat};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{name}` at {pos}")]
    UnknownFunction { pos: usize, name: String },
    #[error("more than one free variable: `{name}` at {pos} is neither `{var}` nor a declared parameter")]
    ExtraVariable { pos: usize, name: String, var: String },
    #[error("exponent at {pos} must be a rational constant")]
    NonRationalExponent { pos: usize },
    #[error("division by zero at {pos}")]
    DivisionByZero { pos: usize },
    #[error("`{name}` at {pos} expects {expected} argument(s), got {got}")]
    Arity { pos: usize, name: String, expected: usize, got: usize },
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub var: String,
    pub params: Vec<String>,
    /// Treat any unknown identifier as a parameter instead of failing.
    pub allow_free_params: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { var: "z".into(), params: Vec::new(), allow_free_params: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Op(char),
    End,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && i + 1 < b.len() && (b[i + 1] as char).is_ascii_digit()) {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            // optional exponent part
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && (b[j] as char).is_ascii_digit() {
                    while j < b.len() && (b[j] as char).is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &s[start..i];
            let v = parse_rat(text).ok_or(ParseError::Syntax { pos: start, msg: format!("bad number `{text}`") })?;
            out.push((Tok::Num(v), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[start..i].to_string()), start));
            continue;
        }
        if c == '*' && i + 1 < b.len() && b[i + 1] == b'*' {
            out.push((Tok::Op('^'), i));
            i += 2;
            continue;
        }
        if "+-*/^(),=".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
            continue;
        }
        return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
    }
    out.push((Tok::End, s.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    k: usize,
    opts: &'a ParseOptions,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].0
    }
    fn pos(&self) -> usize {
        self.toks[self.k].1
    }
    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.k].clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }
    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Syntax { pos: self.pos(), msg: format!("expected `{c}`") })
        }
    }

    fn relation(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.sum()?;
        if *self.peek() == Tok::Op('=') {
            self.bump();
            let rhs = self.sum()?;
            return Ok(Expr::minus(lhs, rhs));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    items.push(self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    let t = self.term()?;
                    items.push(Expr::negate(t));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::add(items) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    let r = self.unary()?;
                    acc = Expr::mul(vec![acc, r]);
                }
                Tok::Op('/') => {
                    let pos = self.pos();
                    self.bump();
                    let r = self.unary()?;
                    acc = Expr::quotient(acc, r).ok_or(ParseError::DivisionByZero { pos })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::negate(self.unary()?))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let pos = self.pos();
            let ex = self.unary()?;
            let q = match ex.as_const() {
                Some(c) if c.im.is_zero() => c.re.clone(),
                _ => return Err(ParseError::NonRationalExponent { pos }),
            };
            return Expr::pow(base, q).ok_or(ParseError::DivisionByZero { pos });
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut v = vec![self.relation()?];
        while *self.peek() == Tok::Op(',') {
            self.bump();
            v.push(self.relation()?);
        }
        self.expect(')')?;
        Ok(v)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (t, pos) = self.bump();
        match t {
            Tok::Num(v) => Ok(Expr::rat(v)),
            Tok::Op('(') => {
                let e = self.relation()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::Op('(') {
                    return self.call(&name, pos);
                }
                if name == self.opts.var {
                    return Ok(Expr::Var);
                }
                if self.opts.params.contains(&name) {
                    return Ok(Expr::Param(name));
                }
                match name.as_str() {
                    "I" | "i" => Ok(Expr::Const(GaussRat::i())),
                    "Pi" | "pi" => Ok(Expr::Named(NamedConst::Pi)),
                    "E" => Ok(Expr::Named(NamedConst::E)),
                    _ if self.opts.allow_free_params => Ok(Expr::Param(name)),
                    _ => Err(ParseError::ExtraVariable { pos, name, var: self.opts.var.clone() }),
                }
            }
            Tok::End => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Op(c) => Err(ParseError::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Expr, ParseError> {
        let args = self.args()?;
        if name == "sqrt" || name == "Sqrt" {
            if args.len() != 1 {
                return Err(ParseError::Arity { pos, name: name.into(), expected: 1, got: args.len() });
            }
            let a = args.into_iter().next().unwrap();
            return Ok(Expr::pow(a, crate::num::rat(1, 2)).expect("positive exponent"));
        }
        let func: Func = name.parse().map_err(|_| ParseError::UnknownFunction { pos, name: name.to_string() })?;
        let expected = func.param_slots() + 1;
        if args.len() != expected {
            return Err(ParseError::Arity { pos, name: name.into(), expected, got: args.len() });
        }
        let mut args = args;
        let arg = args.pop().unwrap();
        Ok(Expr::apply(func, args, arg))
    }
}

/// Parses an expression; `lhs = rhs` is read as the residual `lhs - rhs`.
pub fn parse(input: &str, opts: &ParseOptions) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, k: 0, opts };
    let e = p.relation()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s, &ParseOptions { params: vec!["a".into()], ..Default::default() }).unwrap()
    }

    #[test]
    fn sqrt_is_half_power() {
        assert_eq!(p("sqrt(z)"), Expr::sqrt(Expr::Var));
        assert_eq!(p("z^(1/2)"), Expr::sqrt(Expr::Var));
    }

    #[test]
    fn keeps_log_of_product_as_written() {
        let e = p("log(2*sqrt(z))");
        assert_eq!(e.to_string(), "log(2*sqrt(z))");
    }

    #[test]
    fn relation_becomes_residual() {
        assert_eq!(p("z^2 = 1"), p("z^2 - 1"));
    }

    #[test]
    fn reports_positions() {
        let o = ParseOptions::default();
        assert!(matches!(parse("foo(z)", &o), Err(ParseError::UnknownFunction { pos: 0, .. })));
        assert!(matches!(parse("z + w", &o), Err(ParseError::ExtraVariable { pos: 4, .. })));
        assert!(matches!(parse("z^z", &o), Err(ParseError::NonRationalExponent { .. })));
    }

    #[test]
    fn bessel_takes_order_then_argument() {
        let e = p("BesselJ(a, sqrt(z^3-1))");
        match e {
            Expr::Apply { func: Func::BesselJ, params, .. } => assert_eq!(params, vec![Expr::Param("a".into())]),
            _ => panic!("not an application"),
        }
    }
}
