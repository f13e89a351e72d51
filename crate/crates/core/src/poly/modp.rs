//! Polynomials over a small prime field, coefficients ascending in `u64`.

use num_bigint::BigUint;
use rand::Rng;

pub type MPoly = Vec<u64>;

pub fn trim(mut a: MPoly) -> MPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &MPoly) -> usize {
    a.len().saturating_sub(1)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn add(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| (a.get(k).unwrap_or(&0) + b.get(k).unwrap_or(&0)) % p).collect())
}

pub fn sub(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| (a.get(k).unwrap_or(&0) + p - b.get(k).unwrap_or(&0)) % p).collect())
}

pub fn mul(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(r)
}

pub fn scale(a: &MPoly, c: u64, p: u64) -> MPoly {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn monic(a: &MPoly, p: u64) -> MPoly {
    match a.last() {
        Some(&l) => scale(a, inv_mod(l, p), p),
        None => Vec::new(),
    }
}

pub fn divrem(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly, MPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &MPoly, p: u64) -> MPoly {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect())
}

pub fn powmod_poly(base: &MPoly, e: &BigUint, m: &MPoly, p: u64) -> MPoly {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    for i in 0..e.bits() {
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
    }
    r
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn ddf(f: &MPoly, p: u64) -> Vec<(MPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut i = 1;
    let pe = BigUint::from(p);
    while deg(&f) >= 2 * i {
        h = powmod_poly(&h, &pe, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
        i += 1;
    }
    if deg(&f) > 0 {
        let d = deg(&f);
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus), `p` odd.
pub fn edf<R: Rng>(f: &MPoly, d: usize, p: u64, rng: &mut R) -> Vec<MPoly> {
    let n = deg(f);
    if n == d {
        return vec![monic(f, p)];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let r: MPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&r) == 0 {
            continue;
        }
        let mut g = gcd(&r, f, p);
        if deg(&g) == 0 || deg(&g) == n {
            let h = sub(&powmod_poly(&r, &e, f, p), &vec![1u64], p);
            g = gcd(&h, f, p);
        }
        if deg(&g) > 0 && deg(&g) < n {
            let other = divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&other, d, p, rng));
            return out;
        }
    }
}

pub fn factor_squarefree<R: Rng>(f: &MPoly, p: u64, rng: &mut R) -> Vec<MPoly> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}
