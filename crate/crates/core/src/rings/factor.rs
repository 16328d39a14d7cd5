//! Primality testing and integer factorization at desk scale.
//!
//! Inputs below 2^64 use a deterministic Miller-Rabin test with the first
//! twelve prime bases, small trial division, and Brent's variant of Pollard
//! rho for the cofactor. Larger inputs take the same route over [`BigUint`];
//! there the primality test is probabilistic with 24 fixed bases.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_LIMIT: u64 = 1 << 12;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's cycle detection with batched gcds.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn push_factor(out: &mut Vec<(u64, u32)>, p: u64) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    }
}

fn factor_rec_u64(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push_factor(out, n);
        return;
    }
    let d = rho_u64(n);
    factor_rec_u64(d, out);
    factor_rec_u64(n / d, out);
}

/// Prime factorization of `n >= 1`, sorted by prime.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_u64 of zero");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if n < TRIAL_LIMIT * TRIAL_LIMIT {
            // any composite below the square of the trial limit would have been split
            push_factor(&mut out, n);
        } else {
            factor_rec_u64(n, &mut out);
        }
    }
    out.sort_unstable();
    out
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    const BIG_BASES: [u32; 24] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    ];
    'witness: for &a in &BIG_BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut g = BigUint::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn factor_rec_big(n: BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small) {
            push_big(out, BigUint::from(p), e);
        }
        return;
    }
    if is_probable_prime_big(&n) {
        push_big(out, n, 1);
        return;
    }
    if let Some((root, k)) = perfect_power(&n) {
        let mut inner = Vec::new();
        factor_rec_big(root, &mut inner);
        for (p, e) in inner {
            push_big(out, p, e * k);
        }
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    factor_rec_big(d, out);
    factor_rec_big(rest, out);
}

/// `n = root^k` with `k >= 2` maximal, if `n` is a perfect power.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    (2..=bits).rev().find_map(|k| {
        let r = n.nth_root(k);
        (r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *n).then_some((r, k))
    })
}

fn push_big(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, k)) => *k += e,
        None => out.push((p, e)),
    }
}

/// Prime factorization of an arbitrary positive integer, sorted by prime.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor of zero");
    let mut out = Vec::new();
    factor_rec_big(n.clone(), &mut out);
    out.sort();
    out
}

pub fn is_prime(n: &BigUint) -> bool {
    is_probable_prime_big(n)
}

pub fn is_squarefree(n: &BigUint) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Largest `k` with `p^k | n` for `n != 0`.
pub fn multiplicity(n: &BigUint, p: &BigUint) -> u32 {
    debug_assert!(!n.is_zero() && p > &BigUint::one());
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), brute_is_prime(n), "n = {n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factors_multiply_back() {
        for n in [1u64, 2, 12, 360, 1 << 40, 600851475143, 18446744073709551615, 999999000001] {
            let f = factor_u64(n);
            let prod: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(prod, n as u128);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn big_factorization() {
        let p = BigUint::from(18446744073709551557u64);
        let q = BigUint::from(1000000007u64);
        let n = &p * &p * &q;
        assert_eq!(factor(&n), vec![(q, 1), (p, 2)]);
        assert!(!is_squarefree(&n));
    }

    #[test]
    fn squarefree_and_multiplicity() {
        assert!(is_squarefree(&BigUint::from(6u32)));
        assert!(!is_squarefree(&BigUint::from(4u32)));
        assert_eq!(multiplicity(&BigUint::from(12u32), &BigUint::from(2u32)), 2);
        assert_eq!(multiplicity(&BigUint::from(5u32), &BigUint::from(2u32)), 0);
    }
}
