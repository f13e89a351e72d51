//! Intervals of the extended real line with exact algebraic endpoints.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::num::{fmt_rat, parse_rat, Rat};
use crate::poly::AlgebraicReal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    Finite(AlgebraicReal),
}

impl Bound {
    pub fn rat(r: Rat) -> Bound {
        Bound::Finite(AlgebraicReal::rational(r))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::PosInf => f64::INFINITY,
            Bound::Finite(a) => a.to_f64(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Bound::Finite(a) => a.as_rational(),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn cmp_bound(&self, o: &Bound) -> Ordering {
        match (self, o) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => Ordering::Equal,
            (Bound::NegInf, _) | (_, Bound::PosInf) => Ordering::Less,
            (_, Bound::NegInf) | (Bound::PosInf, _) => Ordering::Greater,
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp_value(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("inf"),
            Bound::Finite(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BoundRepr {
    Text(String),
    Algebraic { minpoly: Vec<String>, lo: String, hi: String, display: String },
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = match self {
            Bound::NegInf => BoundRepr::Text("-inf".into()),
            Bound::PosInf => BoundRepr::Text("inf".into()),
            Bound::Finite(AlgebraicReal::Rational { value }) => BoundRepr::Text(fmt_rat(value)),
            Bound::Finite(a @ AlgebraicReal::Root { poly, lo, hi }) => BoundRepr::Algebraic {
                minpoly: poly.iter().map(fmt_rat).collect(),
                lo: fmt_rat(lo),
                hi: fmt_rat(hi),
                display: a.to_string(),
            },
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let bad = |s: &str| D::Error::custom(format!("bad bound {s:?}"));
        Ok(match BoundRepr::deserialize(d)? {
            BoundRepr::Text(t) => match t.as_str() {
                "-inf" => Bound::NegInf,
                "inf" | "+inf" => Bound::PosInf,
                _ => Bound::rat(parse_rat(&t).ok_or_else(|| bad(&t))?),
            },
            BoundRepr::Algebraic { minpoly, lo, hi, .. } => Bound::Finite(AlgebraicReal::Root {
                poly: minpoly.iter().map(|c| parse_rat(c).ok_or_else(|| bad(c))).collect::<Result<_, _>>()?,
                lo: parse_rat(&lo).ok_or_else(|| bad(&lo))?,
                hi: parse_rat(&hi).ok_or_else(|| bad(&hi))?,
            }),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtInterval {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl ExtInterval {
    pub fn new(lo: Bound, hi: Bound, lo_open: bool, hi_open: bool) -> Self {
        // infinite ends are always open
        let lo_open = lo_open || !lo.is_finite();
        let hi_open = hi_open || !hi.is_finite();
        ExtInterval { lo, hi, lo_open, hi_open }
    }

    pub fn open(lo: Bound, hi: Bound) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn whole() -> Self {
        Self::open(Bound::NegInf, Bound::PosInf)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp_bound(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_open || self.hi_open,
            Ordering::Less => false,
        }
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        let lo = self.lo.to_f64();
        let hi = self.hi.to_f64();
        let above = if self.lo_open { v > lo } else { v >= lo };
        let below = if self.hi_open { v < hi } else { v <= hi };
        above && below
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        let a = AlgebraicReal::rational(r.clone());
        let above = match &self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Finite(l) => match a.cmp_value(l) {
                Ordering::Greater => true,
                Ordering::Equal => !self.lo_open,
                Ordering::Less => false,
            },
        };
        let below = match &self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Finite(h) => match a.cmp_value(h) {
                Ordering::Less => true,
                Ordering::Equal => !self.hi_open,
                Ordering::Greater => false,
            },
        };
        above && below
    }

    /// Intersection with the closed window `[lo, hi]`, as floats.
    pub fn clip_f64(&self, lo: f64, hi: f64) -> Option<(f64, f64)> {
        let a = self.lo.to_f64().max(lo);
        let b = self.hi.to_f64().min(hi);
        (a < b).then_some((a, b))
    }

    pub fn length_f64(&self) -> f64 {
        self.hi.to_f64() - self.lo.to_f64()
    }

    pub fn has_rational_endpoints(&self) -> bool {
        [&self.lo, &self.hi].iter().all(|b| !b.is_finite() || b.as_rational().is_some())
    }

    pub fn mid_f64(&self) -> f64 {
        let (a, b) = (self.lo.to_f64(), self.hi.to_f64());
        match (a.is_finite(), b.is_finite()) {
            (true, true) => 0.5 * (a + b),
            (true, false) => a + 1.0,
            (false, true) => b - 1.0,
            (false, false) => 0.0,
        }
    }
}

impl fmt::Display for ExtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { "(" } else { "[" },
            self.lo,
            self.hi,
            if self.hi_open { ")" } else { "]" }
        )
    }
}
