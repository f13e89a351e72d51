//! Sparse polynomials in the two real coordinates `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::upoly::{fmt_terms, UPoly};
use crate::num::{rat_to_f64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    X,
    Y,
}

impl Coord {
    pub fn other(self) -> Coord {
        match self {
            Coord::X => Coord::Y,
            Coord::Y => Coord::X,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::Y => "y",
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Map from `(deg_x, deg_y)` to a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn var(c: Coord) -> Self {
        match c {
            Coord::X => Self::x(),
            Coord::Y => Self::y(),
        }
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    /// Builds from integer triples `(coeff, deg_x, deg_y)`.
    pub fn from_ints(t: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(t.iter().map(|&(c, i, j)| ((i, j), crate::num::int(c))))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn degree_in(&self, c: Coord) -> u32 {
        self.terms.keys().map(|&(i, j)| if c == Coord::X { i } else { j }).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|(&(i, j), c)| rat_to_f64(c) * x.powi(i as i32) * y.powi(j as i32)).sum()
    }

    pub fn partial(&self, c: Coord) -> Self {
        let mut p = BiPoly::zero();
        for (&(i, j), v) in &self.terms {
            match c {
                Coord::X if i > 0 => p.add_term(i - 1, j, v * Rat::from_integer(i.into())),
                Coord::Y if j > 0 => p.add_term(i, j - 1, v * Rat::from_integer(j.into())),
                _ => {}
            }
        }
        p
    }

    pub fn swap_vars(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect() }
    }

    /// Coefficients of successive powers of `main`, each a polynomial in the other coordinate.
    pub fn as_poly_in(&self, main: Coord) -> Vec<UPoly> {
        let n = self.degree_in(main) as usize;
        let mut raw: Vec<Vec<Rat>> = vec![Vec::new(); n + 1];
        for (&(i, j), v) in &self.terms {
            let (m, o) = if main == Coord::X { (i, j) } else { (j, i) };
            let slot = &mut raw[m as usize];
            if slot.len() <= o as usize {
                slot.resize(o as usize + 1, Rat::zero());
            }
            slot[o as usize] += v;
        }
        if self.is_zero() {
            return Vec::new();
        }
        raw.into_iter().map(UPoly::from_coeffs).collect()
    }

    pub fn from_poly_in(main: Coord, coeffs: &[UPoly]) -> Self {
        let mut p = BiPoly::zero();
        for (m, c) in coeffs.iter().enumerate() {
            for (o, v) in c.coeffs().iter().enumerate() {
                let (i, j) = if main == Coord::X { (m as u32, o as u32) } else { (o as u32, m as u32) };
                p.add_term(i, j, v.clone());
            }
        }
        p
    }

    /// Embeds a univariate polynomial in coordinate `c`.
    pub fn from_upoly(c: Coord, u: &UPoly) -> Self {
        let mut p = BiPoly::zero();
        for (k, v) in u.coeffs().iter().enumerate() {
            match c {
                Coord::X => p.add_term(k as u32, 0, v.clone()),
                Coord::Y => p.add_term(0, k as u32, v.clone()),
            }
        }
        p
    }

    /// Univariate view when only `c` occurs.
    pub fn to_upoly(&self, c: Coord) -> Option<UPoly> {
        if self.degree_in(c.other()) > 0 {
            return None;
        }
        let parts = self.as_poly_in(c);
        Some(UPoly::from_coeffs(parts.iter().map(|p| p.coeff(0)).collect()))
    }

    /// Substitutes the rational value `v` for coordinate `c`.
    pub fn subst(&self, c: Coord, v: &Rat) -> UPoly {
        let parts = self.as_poly_in(c);
        let mut acc = UPoly::zero();
        for p in parts.iter().rev() {
            acc = &acc.scale(v) + p;
        }
        acc
    }

    /// Terms in graded-lex order: higher total degree first, then higher power of `x`.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|t| std::cmp::Reverse((t.0 .0 + t.0 .1, t.0 .0)));
        v
    }

    pub fn leading_coeff(&self) -> Rat {
        self.sorted_terms().first().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    /// `(c, q)` with `self = c*q`, `q` having coprime integer coefficients and positive leading term.
    pub fn primitive(&self) -> (Rat, BiPoly) {
        if self.is_zero() {
            return (Rat::zero(), BiPoly::zero());
        }
        let l = crate::num::lcm_denoms(self.terms.values());
        let lr = Rat::from_integer(l.clone());
        let mut g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(&(c * &lr).to_integer()));
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        let c = Rat::new(g, l);
        let q = self.scale(&(Rat::one() / &c));
        (c, q)
    }

    /// Normal form of an equation `self = 0`.
    pub fn canonical_equation(&self) -> Self {
        self.primitive().1
    }

    /// Normal form of `self < 0` / `self <= 0`: cleared to coprime integers, scaled only by a positive factor.
    pub fn canonical_inequality(&self) -> Self {
        let (c, q) = self.primitive();
        if c.is_negative() {
            -&q
        } else {
            q
        }
    }

    fn mono_str(i: u32, j: u32) -> String {
        let p = |v: &str, k: u32| match k {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{k}"),
        };
        match (i, j) {
            (0, 0) => String::new(),
            (_, 0) => p("x", i),
            (0, _) => p("y", j),
            _ => format!("{}*{}", p("x", i), p("y", j)),
        }
    }

    pub fn to_string_terms(&self) -> String {
        fmt_terms(self.sorted_terms().into_iter().map(|((i, j), c)| (c, Self::mono_str(i, j))))
    }

    /// Splits into non-constant part and constant, printed as `lhs rel rhs`.
    pub fn fmt_relation(&self, rel: &str) -> String {
        let c = self.coeff(0, 0);
        let mut lhs = self.clone();
        lhs.add_term(0, 0, -c.clone());
        if lhs.is_zero() {
            return format!("0 {rel} {}", crate::num::fmt_rat(&(-c)));
        }
        format!("{} {rel} {}", lhs.to_string_terms(), crate::num::fmt_rat(&(-c)))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_terms())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (&(i, j), v) in &o.terms {
            p.add_term(i, j, v.clone());
        }
        p
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (&(i, j), v) in &o.terms {
            p.add_term(i, j, -v.clone());
        }
        p
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, o: BiPoly) -> BiPoly {
        &self + &o
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, o: BiPoly) -> BiPoly {
        &self - &o
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, o: BiPoly) -> BiPoly {
        &self * &o
    }
}

#[derive(Serialize, Deserialize)]
struct BiPolyRepr(Vec<(String, u32, u32)>);

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiPolyRepr(self.sorted_terms().into_iter().map(|((i, j), c)| (crate::num::fmt_rat(&c), i, j)).collect())
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = BiPolyRepr::deserialize(d)?;
        let mut p = BiPoly::zero();
        for (c, i, j) in r.0 {
            let c = crate::num::parse_rat(&c).ok_or_else(|| serde::de::Error::custom("bad rational"))?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_display() {
        let p = BiPoly::from_ints(&[(1, 2, 0), (-1, 0, 2), (-1, 0, 0)]);
        assert_eq!(p.to_string(), "x^2 - y^2 - 1");
        assert_eq!(p.fmt_relation("<"), "x^2 - y^2 < 1");
    }

    #[test]
    fn canonical_forms() {
        let p = BiPoly::from_ints(&[(-4, 1, 1), (2, 0, 0)]);
        assert_eq!(p.canonical_equation(), BiPoly::from_ints(&[(2, 1, 1), (-1, 0, 0)]));
        assert_eq!(p.canonical_inequality(), BiPoly::from_ints(&[(-2, 1, 1), (1, 0, 0)]));
    }

    #[test]
    fn poly_in_roundtrip() {
        let p = BiPoly::from_ints(&[(3, 2, 1), (-1, 0, 2), (5, 1, 0), (7, 0, 0)]);
        for c in [Coord::X, Coord::Y] {
            assert_eq!(BiPoly::from_poly_in(c, &p.as_poly_in(c)), p);
        }
    }
}
