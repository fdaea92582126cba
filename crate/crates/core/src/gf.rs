//! Extension fields `F_{p^e}` as `F_p[x] / (f)` for a fixed irreducible `f`.
//!
//! `f` is the lexicographically smallest monic irreducible of degree `e`
//! (coefficients read from the constant term upward), so a given `(p, e)`
//! always yields the same field and seeded evaluations are reproducible.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::Rng;

use crate::arith::Arith;
use crate::scalar::pow_mod;

/// Polynomials over `F_p`, coefficients from the constant term up, trimmed.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(p^k) mod f`.
fn frobenius_power(k: usize, f: &[u64], p: u64) -> Poly {
    let mut x = poly_rem(&[0, 1], f, p);
    for _ in 0..k {
        x = poly_powmod(&x, p, f, p);
    }
    x
}

/// Rabin's test for a monic `f` of degree `e >= 1`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    let x = poly_rem(&[0, 1], f, p);
    if poly_sub(&frobenius_power(e, f, p), &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(e).into_iter().all(|q| {
        let h = poly_sub(&frobenius_power(e / q, f, p), &x, p);
        poly_gcd(f, &h, p).len() == 1
    })
}

fn smallest_irreducible(p: u64, e: usize) -> Poly {
    let mut digits = vec![0u64; e];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < e, "an irreducible of every degree exists");
        }
    }
}

fn modulus_for(p: u64, e: usize) -> Poly {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, e)) {
        return f.clone();
    }
    let f = smallest_irreducible(p, e);
    cache.lock().unwrap().insert((p, e), f.clone());
    f
}

/// Arithmetic in `F_{p^e}`. Elements are coefficient vectors of length `e`.
#[derive(Clone, Debug)]
pub(crate) struct GfArith {
    p: u64,
    modulus: Poly,
}

impl GfArith {
    pub fn new(p: u64, e: usize) -> Self {
        assert!(e >= 1);
        GfArith { p, modulus: modulus_for(p, e) }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> num_bigint::BigUint {
        num_bigint::BigUint::from(self.p).pow(self.degree() as u32)
    }

    pub fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.p;
        v
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect()
    }

    fn pad(&self, mut a: Poly) -> Vec<u64> {
        a.resize(self.degree(), 0);
        a
    }
}

impl Arith for GfArith {
    type E = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.pad(poly_mulmod(&trim(a.clone()), &trim(b.clone()), &self.modulus, self.p))
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        // a^(q-2) = a^-1 in a field of order q
        let q_minus_2 = self.order() - 2u32;
        let mut acc = self.one();
        let mut base = a.clone();
        for bit in 0..q_minus_2.bits() {
            if q_minus_2.bit(bit) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
        }
        acc
    }
}
