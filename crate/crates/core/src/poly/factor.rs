//! Factorization over the rationals: square-free splitting, Berlekamp-Zassenhaus with Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, MPoly};
use super::upoly::UPoly;
use crate::num::Rat;

/// `constant * prod(f^m)` with every `f` primitive, integral, irreducible and positive-leading.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub constant: Rat,
    pub factors: Vec<(UPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly {
        let mut acc = UPoly::constant(self.constant.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

type IPoly = Vec<BigInt>;

fn itrim(mut a: IPoly) -> IPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    itrim(r)
}

fn isub(a: &IPoly, b: &IPoly) -> IPoly {
    let n = a.len().max(b.len());
    itrim((0..n).map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default()).collect())
}

fn to_mod(a: &IPoly, p: u64) -> MPoly {
    let pb = BigInt::from(p);
    modp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_mod(a: &MPoly) -> IPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Reduces coefficients into the symmetric range `(-m/2, m/2]`.
fn symmetric(a: &IPoly, m: &BigInt) -> IPoly {
    let half = m / 2;
    itrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn reduce(a: &IPoly, m: &BigInt) -> IPoly {
    itrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Exact division over the integers, `None` if not divisible.
fn idiv_exact(a: &IPoly, b: &IPoly) -> Option<IPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(itrim(q))
    } else {
        None
    }
}

fn primitive_int(a: &IPoly) -> IPoly {
    let mut g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return a.clone();
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379,
    383, 389, 397, 401, 409, 419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521,
    523, 541,
];

/// Lifts `f = lc * g * h (mod p)`, `g` monic, to the same identity modulo `p^k`.
fn lift_pair(f: &IPoly, g0: &MPoly, h0: &MPoly, p: u64, k: u32) -> (IPoly, IPoly) {
    let (_, s, t) = modp::ext_gcd(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = from_mod(g0);
    let mut h = from_mod(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let e_full = isub(f, &imul(&g, &h));
        let e: IPoly = e_full.iter().map(|c| c / &pj).collect();
        let e = to_mod(&e, p);
        let (q, r) = modp::divrem(&modp::mul(&t, &e, p), g0, p);
        let w = modp::add(&modp::mul(&s, &e, p), &modp::mul(&q, h0, p), p);
        let next = &pj * &pb;
        g = reduce(&add_scaled(&g, &from_mod(&r), &pj), &next);
        h = reduce(&add_scaled(&h, &from_mod(&w), &pj), &next);
        pj = next;
    }
    (g, h)
}

fn add_scaled(a: &IPoly, b: &IPoly, c: &BigInt) -> IPoly {
    let n = a.len().max(b.len());
    itrim((0..n).map(|k| a.get(k).cloned().unwrap_or_default() + c * b.get(k).cloned().unwrap_or_default()).collect())
}

/// Lifts all modular factors; returns monic lifts modulo `p^k`.
fn hensel_lift(f: &IPoly, factors: &[MPoly], p: u64, k: u32) -> Vec<IPoly> {
    let m = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(&m);
        let inv = lc.modinv(&m).expect("leading coefficient invertible");
        return vec![reduce(&f.iter().map(|c| c * &inv).collect(), &m)];
    }
    let lc = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let rest = factors[1..].iter().fold(vec![lc], |a, b| modp::mul(&a, b, p));
    let (g, h) = lift_pair(f, &factors[0], &rest, p, k);
    let mut out = vec![g];
    out.extend(hensel_lift(&h, &factors[1..], p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors of a primitive square-free integer polynomial of positive degree.
fn zassenhaus(f: &IPoly) -> Vec<IPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<MPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_mod(f, p);
        if modp::deg(&fp) != n {
            continue;
        }
        let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
        if modp::deg(&g) > 0 {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p, &mut rng);
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, fs) = best.expect("a good prime exists");
    // Mignotte-style bound on factor coefficients
    let norm: BigInt = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(n as u64 + 1) * (BigInt::one() << n) * norm * lc.abs() * 2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    while pb.pow(k) <= bound {
        k += 1;
    }
    let m = pb.pow(k);
    let mut lifted = hensel_lift(f, &fs, p, k);
    let mut remaining = f.clone();
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for comb in combinations(lifted.len(), s) {
            let lcr = remaining.last().unwrap().clone();
            let mut cand = vec![lcr];
            for &i in &comb {
                cand = reduce(&imul(&cand, &lifted[i]), &m);
            }
            let cand = primitive_int(&symmetric(&cand, &m));
            if let Some(q) = idiv_exact(&remaining, &cand) {
                found = Some((comb, cand, q));
                break;
            }
        }
        match found {
            Some((comb, cand, q)) => {
                result.push(cand);
                remaining = q;
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !comb.contains(i)).map(|(_, g)| g).collect();
            }
            None => s += 1,
        }
    }
    if remaining.len() > 1 {
        result.push(primitive_int(&remaining));
    }
    result
}

fn to_ipoly(p: &UPoly) -> IPoly {
    p.primitive().1
}

fn sort_key(p: &UPoly) -> (usize, Vec<String>) {
    (p.deg(), p.coeffs().iter().rev().map(|c| format!("{c:>40}")).collect())
}

/// Complete factorization over the rationals.
pub fn factor(p: &UPoly) -> Factorization {
    if p.is_zero() {
        return Factorization { constant: Rat::zero(), factors: Vec::new() };
    }
    let (_, parts) = p.squarefree_decomposition();
    let mut factors: Vec<(UPoly, u32)> = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if part.deg() == 0 {
            continue;
        }
        let ip = to_ipoly(part);
        // pull out x first so the modular image stays square-free-friendly
        let mut ip = ip;
        if ip[0].is_zero() {
            factors.push((UPoly::from_ints(&[0, 1]), i as u32 + 1));
            ip.remove(0);
        }
        if ip.len() > 1 {
            for f in zassenhaus(&ip) {
                factors.push((UPoly::from_bigints(&f), i as u32 + 1));
            }
        }
    }
    factors.sort_by_key(|(f, m)| (sort_key(f), *m));
    let mut prod = UPoly::one();
    for (f, m) in &factors {
        prod = &prod * &f.pow(*m);
    }
    Factorization { constant: p.lc() / prod.lc(), factors }
}

/// Distinct irreducible factors, multiplicities dropped.
pub fn irreducible_factors(p: &UPoly) -> Vec<UPoly> {
    factor(p).factors.into_iter().map(|(f, _)| f).collect()
}
