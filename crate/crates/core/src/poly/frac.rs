//! Univariate rational functions `num/den` kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::upoly::{fmt_terms, Field, Poly, UPoly};
use crate::num::{fmt_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac<F> {
    pub num: Poly<F>,
    pub den: Poly<F>,
}

pub type RatFunc = Frac<Rat>;

impl<F: Field> Frac<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).unwrap();
        let mut d = den.div_exact(&g).unwrap();
        let l = d.lc();
        if l != F::one() {
            let inv = F::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Frac { num: n, den: d }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        Frac { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `None` at a pole.
    pub fn eval(&self, t: &F) -> Option<F> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        Frac { num: self.num.pow(n), den: self.den.pow(n) }
    }
}

impl<F: Field> Zero for Frac<F> {
    fn zero() -> Self {
        Frac { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for Frac<F> {
    fn one() -> Self {
        Frac { num: Poly::one(), den: Poly::one() }
    }
}

impl<F: Field> Add for Frac<F> {
    type Output = Frac<F>;
    fn add(self, o: Frac<F>) -> Frac<F> {
        if self.den == o.den {
            return Frac::new(&self.num + &o.num, self.den);
        }
        Frac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<F: Field> Sub for Frac<F> {
    type Output = Frac<F>;
    fn sub(self, o: Frac<F>) -> Frac<F> {
        self + (-o)
    }
}

impl<F: Field> Mul for Frac<F> {
    type Output = Frac<F>;
    fn mul(self, o: Frac<F>) -> Frac<F> {
        Frac::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<F: Field> Div for Frac<F> {
    type Output = Frac<F>;
    fn div(self, o: Frac<F>) -> Frac<F> {
        Frac::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl<F: Field> Neg for Frac<F> {
    type Output = Frac<F>;
    fn neg(self) -> Frac<F> {
        Frac { num: -&self.num, den: self.den }
    }
}

impl<F: Field> Field for Frac<F> {}

impl RatFunc {
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    /// Renders with the rational content pulled out front, e.g. `-(1/3)*y` or `(x + 3)/(2*x + 5)`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.num.is_zero() {
            return "0".into();
        }
        let (cn, pn) = self.num.primitive();
        let (cd, pd) = self.den.primitive();
        let c = cn / cd;
        let pn = UPoly::from_bigints(&pn);
        let pd = UPoly::from_bigints(&pd);
        let body = fmt_scaled(&c, &pn, var);
        if pd.deg() == 0 {
            body
        } else {
            format!("{}/({})", wrap_if_sum(&body), pd.fmt_var(var))
        }
    }
}

/// `c * p` with `p` primitive, printed compactly.
pub(crate) fn fmt_scaled(c: &Rat, p: &UPoly, var: &str) -> String {
    if p.deg() == 0 {
        return fmt_rat(&(c * p.lc()));
    }
    if c.is_one() {
        return p.fmt_var(var);
    }
    if *c == -Rat::one() {
        let s = (-p).fmt_var(var);
        return s;
    }
    if p.coeffs().iter().filter(|k| !k.is_zero()).count() == 1 {
        // single term: fold the constant in
        return fmt_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, k)| !k.is_zero())
                .map(|(k, a)| (a * c, if k == 1 { var.to_string() } else { format!("{var}^{k}") })),
        );
    }
    let sign = if c.is_negative() { "-" } else { "" };
    let a = c.abs();
    let cs = if a.is_integer() { fmt_rat(&a) } else { format!("({})", fmt_rat(&a)) };
    format!("{sign}{cs}*({})", p.fmt_var(var))
}

pub(crate) fn wrap_if_sum(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(" + ") || body.contains(" - ") {
        format!("({s})")
    } else {
        s.to_string()
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: UPoly,
    den: UPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        if r.den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RatFunc::new(r.num, r.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let n = UPoly::from_ints(&[-1, 0, 1]);
        let d = UPoly::from_ints(&[2, 2]);
        let f = RatFunc::new(n, d);
        assert_eq!(f.num, UPoly::from_coeffs(vec![crate::num::rat(-1, 2), crate::num::rat(1, 2)]));
        assert_eq!(f.den, UPoly::one());
    }

    #[test]
    fn formats_scaled_monomial() {
        let f = RatFunc::from_poly(UPoly::from_coeffs(vec![Rat::zero(), crate::num::rat(-1, 3)]));
        assert_eq!(f.fmt_var("y"), "-(1/3)*y");
    }
}
