//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    match r.to_f64() {
        Some(v) => v,
        None => {
            // huge numerator/denominator: fall back to a scaled division
            let n = r.numer().to_f64().unwrap_or(f64::NAN);
            let d = r.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Nearest dyadic rational with denominator `2^bits`.
pub fn dyadic_from_f64(v: f64, bits: u32) -> Rat {
    let scale = (1u64 << bits) as f64;
    let n = (v * scale).round();
    Rat::new(BigInt::from(n as i64), BigInt::from(1u64 << bits))
}

/// Parses `"3"`, `"-3/4"`, `"0.25"` or `"2.5e-3"` exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = digits.split_once('.').unwrap_or((digits, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{}{}", ip, fp);
    let n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let shift = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if shift >= 0 {
        Rat::from_integer(n * num_traits::pow(ten, shift as usize))
    } else {
        Rat::new(n, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits a nonzero integer as `k^2 * m` with `m` square-free (sign kept in `m`).
pub fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut m = BigInt::one();
    let mut p = BigInt::from(2);
    // trial division up to a modest bound, then test whether what is left is a square
    let limit = BigInt::from(100_000);
    while &p * &p <= rest && p < limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            k *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                m *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            k *= r;
        } else {
            m *= rest;
        }
    }
    (k, sign * m)
}

pub fn is_square_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }
    pub fn real(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }
    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }
    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "I")
                } else if self.im == -Rat::one() {
                    write!(f, "-I")
                } else {
                    write!(f, "{}*I", fmt_rat(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let a = self.im.abs();
                if a.is_one() {
                    write!(f, "{} {} I", fmt_rat(&self.re), sign)
                } else {
                    write!(f, "{} {} {}*I", fmt_rat(&self.re), sign, fmt_rat(&a))
                }
            }
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(Rat::one())
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, o: GaussRat) -> GaussRat {
        let n = o.norm();
        let num = self * o.conj();
        GaussRat { re: num.re / &n, im: num.im / n }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

/// Serde helpers: a rational travels as the string `"p/q"`.
pub mod serde_rat {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_rat_vec {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))).collect()
    }
}

impl serde::Serialize for GaussRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&fmt_rat(&self.re))?;
        t.serialize_element(&fmt_rat(&self.im))?;
        t.end()
    }
}

impl<'de> serde::Deserialize<'de> for GaussRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        let re = parse_rat(&a).ok_or_else(|| serde::de::Error::custom("bad rational"))?;
        let im = parse_rat(&b).ok_or_else(|| serde::de::Error::custom("bad rational"))?;
        Ok(GaussRat { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rat("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rat("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("1e-3"), Some(rat(1, 1000)));
        assert_eq!(parse_rat("2.5E2"), Some(int(250)));
        assert_eq!(parse_rat("abc"), None);
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn square_split_keeps_sign() {
        let (k, m) = square_split(&BigInt::from(-72));
        assert_eq!(k, BigInt::from(6));
        assert_eq!(m, BigInt::from(-2));
        let (k, m) = square_split(&BigInt::from(49));
        assert_eq!((k, m), (BigInt::from(7), BigInt::from(1)));
    }

    #[test]
    fn gaussian_division_inverts_multiplication() {
        let a = GaussRat::new(rat(3, 2), rat(-1, 3));
        let b = GaussRat::new(int(2), int(5));
        assert_eq!((a.clone() * b.clone()) / b, a);
    }
}
