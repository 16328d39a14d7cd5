use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::{factor, NormValue, Ring, RingKind};

/// The integers with the usual absolute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

/// Nearest integer to `x`, ties broken toward zero.
pub fn round_half_toward_zero(x: &BigRational) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if x.is_positive() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// Exact square root of a non-negative integer.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub(crate) fn integer_valuation(e: &BigInt, p: &BigInt) -> Result<u32> {
    if e.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !factor::is_prime(p.magnitude()) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(factor::multiplicity(e.magnitude(), p.magnitude()))
}

impl Ring for Integers {
    type Elem = BigInt;
    type Frac = BigRational;

    fn kind(&self) -> RingKind {
        RingKind::Integers
    }

    fn name(&self) -> String {
        "Z".into()
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn sqrt_exact(&self, a: &BigInt) -> Option<BigInt> {
        isqrt_exact(a)
    }

    fn norm(&self, a: &BigInt) -> NormValue {
        NormValue::from_natural(a.magnitude().clone())
    }

    fn embed(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }

    fn ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
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

    fn to_integral(&self, x: &BigRational) -> Option<BigInt> {
        x.is_integer().then(|| x.to_integer())
    }

    fn frac_parts(&self, x: &BigRational) -> (BigInt, BigInt) {
        (x.numer().clone(), x.denom().clone())
    }

    fn norm_fraction(&self, x: &BigRational) -> NormValue {
        NormValue::new(x.abs())
    }

    fn euclidean_step_scalar(&self, x: &BigRational) -> BigInt {
        round_half_toward_zero(x)
    }

    fn valuation(&self, e: &BigInt, p: &BigInt) -> Result<u32> {
        integer_valuation(e, p)
    }

    fn is_squarefree(&self, e: &BigInt) -> Result<bool> {
        if e.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(factor::is_squarefree(e.magnitude()))
    }

    fn small_elements(&self, bound: u32) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero()];
        for k in 1..=bound as i64 {
            out.push(BigInt::from(k));
            out.push(BigInt::from(-k));
        }
        out
    }

    fn is_normalized(&self, a: &BigInt) -> bool {
        a.is_positive()
    }

    fn as_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }

    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn format_frac(&self, x: &BigRational) -> String {
        crate::rings::format_rational(x)
    }
}
