use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::integers::{integer_valuation, isqrt_exact, round_half_toward_zero};
use crate::rings::{factor, NormValue, Ring, RingKind};

/// The localization Z[1/S] of the integers at the multiplicative set
/// generated by a finite set S of primes.
///
/// Elements are rationals whose denominator is a product of primes in S.
/// The localized norm forgets the S-part: writing a nonzero integer as
/// `s * x'` with `s` an S-product and `x'` prime to S gives `|x|_S = |x'|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedIntegers {
    primes: Vec<BigUint>,
}

impl LocalizedIntegers {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let mut ps: Vec<BigUint> = primes.into_iter().map(BigUint::from).collect();
        if ps.is_empty() {
            return Err(Error::InvalidRing("the prime set S must be nonempty".into()));
        }
        ps.sort();
        if ps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRing("the primes in S must be distinct".into()));
        }
        if let Some(p) = ps.iter().find(|p| !factor::is_prime(p)) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(LocalizedIntegers { primes: ps })
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    /// Split a nonzero integer into its S-part and the part prime to S.
    pub fn split(&self, n: &BigUint) -> (BigUint, BigUint) {
        let mut rest = n.clone();
        let mut s = BigUint::one();
        for p in &self.primes {
            loop {
                let (q, r) = rest.div_rem(p);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                s *= p;
            }
        }
        (s, rest)
    }

    pub fn s_free(&self, n: &BigUint) -> BigUint {
        self.split(n).1
    }

    pub fn is_s_unit_denominator(&self, d: &BigInt) -> bool {
        self.s_free(d.magnitude()).is_one()
    }

    /// The localized norm of an ordinary integer.
    pub fn norm_of_integer(&self, n: &BigInt) -> NormValue {
        if n.is_zero() {
            return NormValue::zero();
        }
        NormValue::from_natural(self.s_free(n.magnitude()))
    }
}

impl Ring for LocalizedIntegers {
    type Elem = BigRational;
    type Frac = BigRational;

    fn kind(&self) -> RingKind {
        RingKind::LocalizedIntegers
    }

    fn name(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        format!("Z[1/{}]", ps.join(","))
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero() && self.s_free(a.numer().magnitude()).is_one()
    }

    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            return None;
        }
        let q = a / b;
        self.is_s_unit_denominator(q.denom()).then_some(q)
    }

    fn sqrt_exact(&self, a: &BigRational) -> Option<BigRational> {
        let n = isqrt_exact(a.numer())?;
        let d = isqrt_exact(a.denom())?;
        Some(BigRational::new(n, d))
    }

    fn norm(&self, a: &BigRational) -> NormValue {
        debug_assert!(self.is_s_unit_denominator(a.denom()));
        self.norm_of_integer(a.numer())
    }

    fn embed(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn ratio(&self, num: &BigRational, den: &BigRational) -> Option<BigRational> {
        (!den.is_zero()).then(|| num / den)
    }

    fn frac_add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn frac_sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn frac_mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn frac_neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn frac_inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn frac_is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn to_integral(&self, x: &BigRational) -> Option<BigRational> {
        self.is_s_unit_denominator(x.denom()).then(|| x.clone())
    }

    /// Denominator is the positive S-free part of the rational denominator.
    fn frac_parts(&self, x: &BigRational) -> (BigRational, BigRational) {
        let den = BigInt::from(self.s_free(x.denom().magnitude()));
        let den = BigRational::from_integer(den);
        (x * &den, den)
    }

    fn norm_fraction(&self, x: &BigRational) -> NormValue {
        if x.is_zero() {
            return NormValue::zero();
        }
        let n = self.s_free(x.numer().magnitude());
        let d = self.s_free(x.denom().magnitude());
        NormValue::new(BigRational::new(n.into(), d.into()))
    }

    /// Write `x = a / (s b')` with `s` an S-product and `b'` prime to S,
    /// round `a / b'` over the integers and divide the result by `s`.
    fn euclidean_step_scalar(&self, x: &BigRational) -> BigRational {
        let (s, b_free) = self.split(x.denom().magnitude());
        let rounded = round_half_toward_zero(&BigRational::new(
            x.numer().clone(),
            BigInt::from(b_free),
        ));
        BigRational::new(rounded, BigInt::from(s))
    }

    fn valuation(&self, e: &BigRational, p: &BigRational) -> Result<u32> {
        if e.is_zero() {
            return Err(Error::ZeroValuation);
        }
        if !p.is_integer() || self.primes.contains(p.numer().magnitude()) {
            return Err(Error::NotPrime(crate::rings::format_rational(p)));
        }
        integer_valuation(e.numer(), p.numer())
    }

    fn is_squarefree(&self, e: &BigRational) -> Result<bool> {
        if e.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(factor::is_squarefree(&self.s_free(e.numer().magnitude())))
    }

    fn small_elements(&self, bound: u32) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero()];
        for k in 1..=bound as i64 {
            out.push(BigRational::from_integer(k.into()));
            out.push(BigRational::from_integer((-k).into()));
        }
        out
    }

    fn is_normalized(&self, a: &BigRational) -> bool {
        a.is_positive() && a.is_integer() && self.split(a.numer().magnitude()).0.is_one()
    }

    fn as_integer(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }

    fn format_elem(&self, a: &BigRational) -> String {
        crate::rings::format_rational(a)
    }

    fn format_frac(&self, x: &BigRational) -> String {
        crate::rings::format_rational(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn localized_norm_examples() {
        let r = LocalizedIntegers::new([2]).unwrap();
        assert_eq!(r.norm(&q(12, 1)), NormValue::from_natural(3u32.into()));
        assert_eq!(r.norm_fraction(&q(1, 3)).value(), &q(1, 3));
        assert!(r.norm_fraction(&q(1, 2)).is_one());
        assert!(r.is_unit(&q(-1, 8)));
        assert!(!r.is_unit(&q(3, 1)));
    }

    #[test]
    fn rejects_bad_prime_sets() {
        assert!(LocalizedIntegers::new([]).is_err());
        assert!(LocalizedIntegers::new([2, 2]).is_err());
        assert!(LocalizedIntegers::new([4]).is_err());
    }

    #[test]
    fn step_clears_s_units() {
        let r = LocalizedIntegers::new([2, 5]).unwrap();
        for x in [q(7, 6), q(1, 2), q(-13, 30), q(99, 7), q(3, 40)] {
            let y = r.euclidean_step_scalar(&x);
            assert!(r.to_integral(&y).is_some());
            assert!(r.norm_fraction(&(&x - &y)).less_than_one(), "x = {x}");
        }
    }

    #[test]
    fn primes_of_s_are_units_not_primes() {
        let r = LocalizedIntegers::new([2]).unwrap();
        assert!(matches!(r.valuation(&q(12, 1), &q(2, 1)), Err(Error::NotPrime(_))));
        assert_eq!(r.valuation(&q(18, 1), &q(3, 1)), Ok(2));
        assert_eq!(r.is_squarefree(&q(12, 1)), Ok(true));
    }
}
