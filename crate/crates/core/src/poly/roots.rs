//! Real-root isolation (Descartes' rule of signs with bisection) and exact real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::irreducible_factors;
use super::upoly::UPoly;
use crate::num::{fmt_rat, int, rat_to_f64, square_split, Rat};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("cannot isolate roots of the zero polynomial")]
    ZeroPolynomial,
}

/// Isolating interval: `lo == hi` means the root is exactly `lo`; otherwise the root lies in the open `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "crate::num::serde_rat")]
    pub lo: Rat,
    #[serde(with = "crate::num::serde_rat")]
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Coefficient sign variations of `p` after the Möbius map sending `(0, inf)` onto `(a, b)`.
fn descartes_bound(p: &UPoly, a: &Rat, b: &Rat) -> usize {
    let n = p.deg();
    // q(x) = p(a + (b - a) x)
    let q = p.compose(&UPoly::from_coeffs(vec![a.clone(), b - a]));
    // r(x) = x^n q(1/x), then s(x) = r(x + 1)
    let mut rc: Vec<Rat> = q.coeffs().to_vec();
    rc.resize(n + 1, Rat::zero());
    rc.reverse();
    let s = UPoly::from_coeffs(rc).shift(&Rat::one());
    let mut last = 0i8;
    let mut v = 0;
    for c in s.coeffs() {
        let sg = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
    }
    v
}

/// A power of two strictly above every root's absolute value.
pub fn root_bound(p: &UPoly) -> Rat {
    let lc = p.lc().abs();
    let m = p.coeffs().iter().take(p.deg()).map(|c| c.abs() / &lc).fold(Rat::zero(), |a, b| if b > a { b } else { a });
    let target = m + Rat::one();
    let mut b = Rat::one();
    while b <= target {
        b *= int(2);
    }
    b
}

/// Disjoint isolating intervals for the distinct real roots, in increasing order.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<RootInterval>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    if sf.deg() == 0 {
        return Ok(Vec::new());
    }
    let b = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, c)) = stack.pop() {
        match descartes_bound(&sf, &a, &c) {
            0 => {}
            1 => out.push(RootInterval { lo: a, hi: c }),
            _ => {
                let m = split_point(&sf, &a, &c);
                stack.push((m.clone(), c));
                stack.push((a, m));
            }
        }
    }
    // rational roots are reported exactly
    let rational: Vec<Rat> =
        irreducible_factors(&sf).into_iter().filter(|f| f.deg() == 1).map(|f| -f.coeff(0) / f.coeff(1)).collect();
    for iv in &mut out {
        if let Some(r) = rational.iter().find(|r| iv.lo < **r && **r < iv.hi) {
            *iv = RootInterval { lo: r.clone(), hi: r.clone() };
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// A point inside `(a, c)`, near the middle, where `p` does not vanish.
fn split_point(p: &UPoly, a: &Rat, c: &Rat) -> Rat {
    let mid = (a + c) / int(2);
    let mut step = (c - a) / int(8);
    let mut m = mid.clone();
    while p.eval(&m).is_zero() {
        m = &mid + &step;
        step /= int(2);
    }
    m
}

/// Bisects an isolating interval of a square-free `p` until narrower than `width`.
pub fn refine(p: &UPoly, iv: &RootInterval, width: &Rat) -> RootInterval {
    let mut iv = iv.clone();
    if iv.is_exact() {
        return iv;
    }
    let mut slo = p.sign_at(&iv.lo);
    while iv.width() >= *width {
        let m = (&iv.lo + &iv.hi) / int(2);
        let sm = p.sign_at(&m);
        if sm == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sm == slo {
            iv.lo = m;
            slo = sm;
        } else {
            iv.hi = m;
        }
    }
    iv
}

/// A real algebraic number: a rational, or the unique root of an irreducible polynomial in an open interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraicReal {
    Rational {
        #[serde(with = "crate::num::serde_rat")]
        value: Rat,
    },
    Root {
        #[serde(with = "crate::num::serde_rat_vec", rename = "minpoly")]
        poly: Vec<Rat>,
        #[serde(with = "crate::num::serde_rat")]
        lo: Rat,
        #[serde(with = "crate::num::serde_rat")]
        hi: Rat,
    },
}

impl AlgebraicReal {
    pub fn rational(r: Rat) -> Self {
        AlgebraicReal::Rational { value: r }
    }

    /// Wraps a root of an irreducible `poly` isolated by `iv`.
    pub fn from_irreducible(poly: &UPoly, iv: &RootInterval) -> Self {
        if iv.is_exact() {
            return Self::rational(iv.lo.clone());
        }
        if poly.deg() == 1 {
            return Self::rational(-poly.coeff(0) / poly.coeff(1));
        }
        // shrink to a canonical tight interval so equal numbers compare structurally equal
        let iv = canonical_interval(poly, iv);
        AlgebraicReal::Root { poly: poly.primitive_part().coeffs().to_vec(), lo: iv.lo, hi: iv.hi }
    }

    /// All real roots of `p`, each carrying its minimal polynomial, sorted ascending.
    pub fn roots_of(p: &UPoly) -> Vec<AlgebraicReal> {
        let mut all = Vec::new();
        for f in irreducible_factors(p) {
            for iv in isolate_real_roots(&f).unwrap_or_default() {
                all.push(AlgebraicReal::from_irreducible(&f, &iv));
            }
        }
        sort_distinct(&mut all);
        all
    }

    pub fn minpoly(&self) -> UPoly {
        match self {
            AlgebraicReal::Rational { value } => UPoly::from_coeffs(vec![-value.clone(), Rat::one()]).primitive_part(),
            AlgebraicReal::Root { poly, .. } => UPoly::from_coeffs(poly.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            AlgebraicReal::Rational { value } => Some(value),
            _ => None,
        }
    }

    pub fn interval(&self) -> RootInterval {
        match self {
            AlgebraicReal::Rational { value } => RootInterval { lo: value.clone(), hi: value.clone() },
            AlgebraicReal::Root { lo, hi, .. } => RootInterval { lo: lo.clone(), hi: hi.clone() },
        }
    }

    pub fn refined(&self, width: &Rat) -> RootInterval {
        match self {
            AlgebraicReal::Rational { .. } => self.interval(),
            AlgebraicReal::Root { .. } => refine(&self.minpoly(), &self.interval(), width),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlgebraicReal::Rational { value } => rat_to_f64(value),
            AlgebraicReal::Root { .. } => {
                let iv = self.refined(&Rat::new(BigInt::one(), BigInt::one() << 60u32));
                rat_to_f64(&((&iv.lo + &iv.hi) / int(2)))
            }
        }
    }

    /// Exact sign of `q` at this number.
    pub fn sign_of(&self, q: &UPoly) -> i32 {
        match self {
            AlgebraicReal::Rational { value } => q.sign_at(value),
            AlgebraicReal::Root { .. } => {
                let m = self.minpoly();
                if q.is_zero() {
                    return 0;
                }
                if q.rem(&m).is_zero() {
                    return 0;
                }
                // q does not vanish here: shrink both sides until no root of q meets the interval
                let qs = q.squarefree_part();
                let mut qr = isolate_real_roots(&qs).unwrap_or_default();
                let mut iv = self.interval();
                loop {
                    let hit: Vec<usize> = (0..qr.len()).filter(|&j| qr[j].hi >= iv.lo && qr[j].lo <= iv.hi).collect();
                    if hit.is_empty() {
                        let mid = (&iv.lo + &iv.hi) / int(2);
                        return q.sign_at(&mid);
                    }
                    for j in hit {
                        let w = qr[j].width() / int(2);
                        qr[j] = refine(&qs, &qr[j], &w);
                    }
                    let w = iv.width() / int(2);
                    iv = refine(&m, &iv, &w);
                }
            }
        }
    }

    pub fn cmp_value(&self, other: &AlgebraicReal) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if self.minpoly() == other.minpoly() {
            // same minimal polynomial: equal iff the isolating intervals overlap
            let (a, b) = (self.interval(), other.interval());
            if a.hi > b.lo && b.hi > a.lo {
                return Ordering::Equal;
            }
        } else if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return x.cmp(y);
        }
        let mut a = self.interval();
        let mut b = other.interval();
        loop {
            if a.hi < b.lo || (a.hi == b.lo && !(a.is_exact() && b.is_exact())) {
                return Ordering::Less;
            }
            if b.hi < a.lo || (b.hi == a.lo && !(a.is_exact() && b.is_exact())) {
                return Ordering::Greater;
            }
            if a.is_exact() && b.is_exact() {
                return a.lo.cmp(&b.lo);
            }
            if !a.is_exact() {
                a = refine(&self.minpoly(), &a, &(a.width() / int(2)));
            }
            if !b.is_exact() {
                b = refine(&other.minpoly(), &b, &(b.width() / int(2)));
            }
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        self.cmp_value(&AlgebraicReal::rational(r.clone()))
    }

    /// `p/q + (s/t)*sqrt(m)` rendering for degree-two minimal polynomials.
    pub fn closed_form(&self) -> Option<String> {
        match self {
            AlgebraicReal::Rational { value } => Some(fmt_rat(value)),
            AlgebraicReal::Root { poly, .. } if poly.len() == 3 => {
                let (a, b, c) = (&poly[2], &poly[1], &poly[0]);
                let disc = b * b - int(4) * a * c;
                let center = -b / (int(2) * a);
                // sqrt(disc)/(2a) = (k/den)*sqrt(m)
                let n = disc.numer() * disc.denom();
                let (k, m) = square_split(&n);
                let coef = Rat::new(k, disc.denom().clone()) / (int(2) * a.abs());
                let center_f = rat_to_f64(&center);
                let plus = self.to_f64() > center_f;
                let rad = if coef.is_one() {
                    format!("sqrt({m})")
                } else if coef.is_integer() {
                    format!("{}*sqrt({m})", fmt_rat(&coef))
                } else {
                    format!("({})*sqrt({m})", fmt_rat(&coef))
                };
                Some(if center.is_zero() {
                    if plus {
                        rad
                    } else {
                        format!("-{rad}")
                    }
                } else {
                    format!("{} {} {}", fmt_rat(&center), if plus { "+" } else { "-" }, rad)
                })
            }
            _ => None,
        }
    }
}

fn canonical_interval(poly: &UPoly, iv: &RootInterval) -> RootInterval {
    // the aligned dyadic cell holding the root, at the first level where it isolates
    let mut bits = 20u32;
    let mut iv = iv.clone();
    loop {
        let w = Rat::new(BigInt::one(), BigInt::one() << bits);
        iv = refine(poly, &iv, &w);
        if iv.is_exact() {
            return iv;
        }
        let c = (&iv.lo / &w).floor() * &w;
        for k in 0..2 {
            let lo = &c + &w * int(k);
            let hi = &lo + &w;
            if lo <= iv.lo && iv.hi <= hi && descartes_bound(poly, &lo, &hi) == 1 {
                return RootInterval { lo, hi };
            }
        }
        bits += 4;
    }
}

/// Sorts values ascending and removes duplicates.
pub fn sort_distinct(v: &mut Vec<AlgebraicReal>) {
    v.sort_by(|a, b| a.cmp_value(b));
    v.dedup_by(|a, b| a.cmp_value(b) == Ordering::Equal);
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.closed_form() {
            Some(s) => f.write_str(&s),
            None => {
                let m = self.minpoly();
                write!(f, "root({}, {:.12})", m.fmt_var("t"), self.to_f64())
            }
        }
    }
}

/// Sturm sequence sign-variation count; kept as an independent check for the isolator.
pub fn sturm_count(p: &UPoly, a: &Rat, b: &Rat) -> usize {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        seq.push(-&r);
    }
    seq.pop();
    let var = |x: &Rat| {
        let signs: Vec<i32> = seq.iter().map(|q| q.sign_at(x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    var(a).saturating_sub(var(b))
}
