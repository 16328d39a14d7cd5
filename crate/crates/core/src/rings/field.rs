//! The finite field F_q for an odd prime power q = p^k.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of the code
//! are the coefficients (low to high) of a polynomial over F_p reduced modulo a
//! fixed monic irreducible of degree k. For k = 1 this is plain arithmetic mod p.
//! Multiplication goes through discrete log tables built once per field.

use crate::error::{Error, Result};
use crate::rings::factor::factor_u64;

/// Largest field order accepted; keeps the log tables small.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    sqrt: Vec<Option<u32>>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        if !(3..=MAX_FIELD_ORDER).contains(&q) {
            return Err(Error::InvalidRing(format!(
                "field order {q} outside 3..={MAX_FIELD_ORDER}"
            )));
        }
        let f = factor_u64(q as u64);
        if f.len() != 1 {
            return Err(Error::InvalidRing(format!("{q} is not a prime power")));
        }
        let (p, k) = (f[0].0 as u32, f[0].1);
        if p == 2 {
            return Err(Error::InvalidRing(format!(
                "{q} has characteristic 2; an odd prime power is required"
            )));
        }
        let modulus = if k == 1 { vec![0, 1] } else { find_irreducible(p, k) };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            sqrt: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut a = a;
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[s as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.sqrt[a as usize].is_some()
    }

    pub fn sqrt(&self, a: u32) -> Option<u32> {
        self.sqrt[a as usize]
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Multiply two field elements as polynomials over F_p modulo the modulus.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p as u64, self.k as usize);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(k) {
                let t = &mut prod[deg - k + i];
                *t = (*t + (p - c) * m as u64) % p;
            }
            prod[deg] = 0;
        }
        let out: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.from_digits(&out)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let group = self.q as u64 - 1;
        let primes: Vec<u64> = factor_u64(group).into_iter().map(|(r, _)| r).collect();
        let gen = (2..self.q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&r| self.pow_slow(g, group / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; q - 1];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, gen);
        }
        self.exp = exp;
        self.log = log;
        let mut sqrt = vec![None; q];
        sqrt[0] = Some(0);
        for r in 1..self.q {
            let s = self.mul(r, r);
            if sqrt[s as usize].is_none() {
                sqrt[s as usize] = Some(r);
            }
        }
        self.sqrt = sqrt;
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Lexicographically smallest monic irreducible of degree `k` over F_p,
/// coefficients low to high, found by trial division against every monic
/// polynomial of degree at most k/2.
fn find_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let total = (p as u64).pow(k as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(k + 1);
        let mut c = code;
        for _ in 0..k {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if is_irreducible_fp(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn is_irreducible_fp(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if rem_fp(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn rem_fp(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for deg in (dg..r.len()).rev() {
        let c = r[deg] % p;
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let t = &mut r[deg - dg + i];
            *t = (*t + (p - c) * gi as u64 % p) % p;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|x| x as u32).collect()
}
