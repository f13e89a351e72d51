//! Elements of a tower of quadratic extensions `K(sqrt(r0))(sqrt(r1))...`.
//!
//! An element at level `L > 0` is `a + b*sqrt(r[L-1])` with `a`, `b` at level `L-1`;
//! `r[k]` is itself an element at level `k`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::upoly::Field;
use crate::num::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Surd<T> {
    Base(T),
    Ext(Box<Surd<T>>, Box<Surd<T>>),
}

impl<T: Field> Surd<T> {
    pub fn level(&self) -> usize {
        match self {
            Surd::Base(_) => 0,
            Surd::Ext(a, _) => 1 + a.level(),
        }
    }

    pub fn zero_at(level: usize) -> Self {
        Self::base_at(T::zero(), level)
    }

    pub fn base_at(t: T, level: usize) -> Self {
        let mut s = Surd::Base(t);
        for l in 0..level {
            s = Surd::Ext(Box::new(s), Box::new(Self::zero_at(l)));
        }
        s
    }

    /// `sqrt(r[level-1])` at `level`.
    pub fn root_at(level: usize) -> Self {
        assert!(level > 0);
        Surd::Ext(Box::new(Self::zero_at(level - 1)), Box::new(Self::base_at(T::one(), level - 1)))
    }

    pub fn lift_to(&self, level: usize) -> Self {
        let mut s = self.clone();
        while s.level() < level {
            let l = s.level();
            s = Surd::Ext(Box::new(s), Box::new(Self::zero_at(l)));
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Surd::Base(t) => t.is_zero(),
            Surd::Ext(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Surd::Base(a), Surd::Base(b)) => Surd::Base(a.clone() + b.clone()),
            (Surd::Ext(a, b), Surd::Ext(c, d)) => Surd::Ext(Box::new(a.add(c)), Box::new(b.add(d))),
            _ => {
                let l = self.level().max(o.level());
                self.lift_to(l).add(&o.lift_to(l))
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Surd::Base(a) => Surd::Base(-a.clone()),
            Surd::Ext(a, b) => Surd::Ext(Box::new(a.neg()), Box::new(b.neg())),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self, radicands: &[Surd<T>]) -> Self {
        match (self, o) {
            (Surd::Base(a), Surd::Base(b)) => Surd::Base(a.clone() * b.clone()),
            (Surd::Ext(a, b), Surd::Ext(c, d)) => {
                let l = self.level();
                let r = &radicands[l - 1];
                let ac = a.mul(c, radicands);
                let bd = b.mul(d, radicands);
                let re = ac.add(&bd.mul(r, radicands));
                let im = a.mul(d, radicands).add(&b.mul(c, radicands));
                Surd::Ext(Box::new(re), Box::new(im))
            }
            _ => {
                let l = self.level().max(o.level());
                self.lift_to(l).mul(&o.lift_to(l), radicands)
            }
        }
    }

    /// `a - b*sqrt(r)` for the top extension.
    pub fn conj(&self) -> Self {
        match self {
            Surd::Base(_) => self.clone(),
            Surd::Ext(a, b) => Surd::Ext(a.clone(), Box::new(b.neg())),
        }
    }

    /// `a^2 - b^2 * r`, one level down.
    pub fn norm(&self, radicands: &[Surd<T>]) -> Self {
        match self {
            Surd::Base(_) => self.clone(),
            Surd::Ext(a, b) => {
                let l = self.level();
                let r = &radicands[l - 1];
                a.mul(a, radicands).sub(&b.mul(b, radicands).mul(r, radicands))
            }
        }
    }

    /// Repeated norms down to the base field.
    pub fn full_norm(&self, radicands: &[Surd<T>]) -> T {
        let mut s = self.clone();
        while let Surd::Ext(..) = s {
            s = s.norm(radicands);
        }
        match s {
            Surd::Base(t) => t,
            _ => unreachable!(),
        }
    }

    /// Every base-field coefficient appearing in the element.
    pub fn base_parts(&self) -> Vec<&T> {
        match self {
            Surd::Base(t) => vec![t],
            Surd::Ext(a, b) => {
                let mut v = a.base_parts();
                v.extend(b.base_parts());
                v
            }
        }
    }

    pub fn try_map<U: Field>(&self, f: &impl Fn(&T) -> Option<U>) -> Option<Surd<U>> {
        Some(match self {
            Surd::Base(t) => Surd::Base(f(t)?),
            Surd::Ext(a, b) => Surd::Ext(Box::new(a.try_map(f)?), Box::new(b.try_map(f)?)),
        })
    }
}

/// Exact sign of a numeric element; `None` if some radicand it depends on is negative.
pub fn sign(x: &Surd<Rat>, radicands: &[Surd<Rat>]) -> Option<i32> {
    match x {
        Surd::Base(r) => Some(if r.is_zero() {
            0
        } else if r.is_positive() {
            1
        } else {
            -1
        }),
        Surd::Ext(a, b) => {
            let l = x.level();
            let r = &radicands[l - 1];
            let sr = sign(r, radicands)?;
            if sr < 0 {
                return None;
            }
            let sa = sign(a, radicands)?;
            if sr == 0 {
                return Some(sa);
            }
            let sb = sign(b, radicands)?;
            if sa == 0 {
                return Some(sb);
            }
            if sb == 0 || sa == sb {
                return Some(sa);
            }
            // opposite signs: compare a^2 with b^2 r
            let d = x.norm(radicands);
            let sd = sign(&d, radicands)?;
            Some(match sd {
                1 => sa,
                -1 => sb,
                _ => 0,
            })
        }
    }
}

/// Float value given float radicand values.
pub fn eval_f64(x: &Surd<f64>, rvals: &[f64]) -> f64 {
    match x {
        Surd::Base(v) => *v,
        Surd::Ext(a, b) => {
            let l = x.level();
            let r = rvals[l - 1].max(0.0);
            eval_f64(a, rvals) + eval_f64(b, rvals) * r.sqrt()
        }
    }
}

/// `f64` only satisfies `Field` loosely; it is used for numeric evaluation of towers.
impl Field for f64 {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn sign_of_sqrt2_minus_three_halves() {
        let rad = vec![Surd::Base(int(2))];
        let x = Surd::Ext(Box::new(Surd::Base(crate::num::rat(-3, 2))), Box::new(Surd::Base(int(1))));
        assert_eq!(sign(&x, &rad), Some(-1));
        let y = Surd::Ext(Box::new(Surd::Base(crate::num::rat(-7, 5))), Box::new(Surd::Base(int(1))));
        assert_eq!(sign(&y, &rad), Some(1));
    }

    #[test]
    fn multiplication_matches_norm() {
        let rad = vec![Surd::Base(int(3))];
        let x = Surd::Ext(Box::new(Surd::Base(int(2))), Box::new(Surd::Base(int(5))));
        let p = x.mul(&x.conj(), &rad);
        assert_eq!(p, Surd::base_at(int(4 - 75), 1));
        assert_eq!(x.norm(&rad), Surd::Base(int(-71)));
    }
}
