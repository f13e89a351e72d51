//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{fmt_rat, rat_to_f64, GaussRat, Rat};

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl Field for Rat {}
impl Field for GaussRat {}

/// Coefficients in ascending order; never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

pub type UPoly = Poly<Rat>;
pub type GPoly = Poly<GaussRat>;

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = F::one() / self.lc();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = F::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                v.push(c.clone() * k.clone());
            }
            k = k + F::one();
        }
        Self::from_coeffs(v)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &F) -> Self {
        self.compose(&Self::from_coeffs(vec![c.clone(), F::one()]))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let inv = F::one() / d.lc();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = F::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(v)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl UPoly {
    pub fn from_ints(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&c| crate::num::int(c)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        Self::from_coeffs(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// `(c, q)` with `self = c*q`, `q` integral, primitive and with positive leading coefficient.
    pub fn primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let l = crate::num::lcm_denoms(self.coeffs.iter());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, l), prim)
    }

    pub fn primitive_part(&self) -> Self {
        Self::from_bigints(&self.primitive().1)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Yun's square-free decomposition: `self = c * prod(parts[i]^(i+1))`.
    pub fn squarefree_decomposition(&self) -> (Rat, Vec<UPoly>) {
        let (c, prim) = self.primitive();
        let a = Self::from_bigints(&prim);
        if a.deg() == 0 {
            return (c * a.lc(), Vec::new());
        }
        let mut parts = Vec::new();
        let da = a.derivative();
        let g = a.gcd(&da);
        let mut w = a.div_exact(&g).unwrap();
        let mut y = da.div_exact(&g).unwrap();
        let mut z = &y - &w.derivative();
        while w.deg() > 0 {
            let g = w.gcd(&z);
            let nw = w.div_exact(&g).unwrap();
            y = z.div_exact(&g).unwrap();
            z = &y - &nw.derivative();
            parts.push(g.primitive_part());
            w = nw;
        }
        while parts.last().is_some_and(|p| p.deg() == 0) {
            parts.pop();
        }
        for p in parts.iter_mut() {
            if p.deg() == 0 {
                *p = Self::one();
            }
        }
        // fix the constant so the product matches exactly
        let mut prod = Self::one();
        for (i, p) in parts.iter().enumerate() {
            prod = &prod * &p.pow(i as u32 + 1);
        }
        let cc = self.lc() / prod.lc();
        (cc, parts)
    }

    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().primitive_part()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        fmt_terms(
            self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.clone(), mono(var, k))),
        )
    }
}

fn mono(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Joins `(coefficient, monomial)` pairs into `a*x^2 - b*x + c` form.
pub(crate) fn fmt_terms(terms: impl Iterator<Item = (Rat, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() {
            out.push_str(&fmt_rat(&a));
        } else if a.is_one() {
            out.push_str(&m);
        } else if a.is_integer() {
            out.push_str(&format!("{}*{}", fmt_rat(&a), m));
        } else {
            out.push_str(&format!("({})*{}", fmt_rat(&a), m));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

/// A rational polynomial travels as its ascending coefficients, each a `"p/q"` string.
impl Serialize for UPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::num::serde_rat_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(UPoly::from_coeffs(crate::num::serde_rat_vec::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn divrem_reconstructs() {
        let a = UPoly::from_ints(&[1, -3, 0, 2, 5]);
        let b = UPoly::from_ints(&[2, 0, 3]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg() || r.is_zero());
    }

    #[test]
    fn yun_on_repeated_factors() {
        // (x-1)^2 (x+2)^3
        let p = UPoly::from_ints(&[-1, 1]).pow(2) * UPoly::from_ints(&[2, 1]).pow(3);
        let (c, parts) = p.squarefree_decomposition();
        assert_eq!(c, int(1));
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], UPoly::one());
        assert_eq!(parts[1], UPoly::from_ints(&[-1, 1]));
        assert_eq!(parts[2], UPoly::from_ints(&[2, 1]));
    }

    #[test]
    fn display() {
        let p = UPoly::from_coeffs(vec![crate::num::rat(-1, 2), int(0), int(-3), int(4)]);
        assert_eq!(p.fmt_var("x"), "4*x^3 - 3*x^2 - 1/2");
    }
}
