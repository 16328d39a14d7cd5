//! Coefficient rings with multiplicative norms, and their fraction fields.
//!
//! Three rings are supported: the integers with the absolute value
//! ([`Integers`]), F_q[t] with `|f| = base^deg f` ([`PolyRing`]), and the
//! localization Z[1/S] at a finite set of primes with the S-free absolute
//! value ([`LocalizedIntegers`]). Each implements [`Ring`], which bundles
//! ring arithmetic, fraction field arithmetic, the norm, and the scalar
//! Euclidean step.

pub mod context;
pub mod factor;
pub mod field;
pub mod integers;
pub mod localized;
pub mod poly;
pub mod polyring;

use std::fmt::{self, Debug, Display};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;

pub use context::{ElemCodec, RingContext, RingDescriptor};
pub use field::FiniteField;
pub use integers::Integers;
pub use localized::LocalizedIntegers;
pub use poly::Poly;
pub use polyring::{PolyRing, RatFunc};

/// A norm value: a natural number for ring elements, a non-negative rational
/// for fraction field elements. Zero exactly for the zero element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormValue(BigRational);

impl NormValue {
    pub fn new(value: BigRational) -> Self {
        debug_assert!(!value.is_negative());
        NormValue(value)
    }

    pub fn from_natural(n: BigUint) -> Self {
        NormValue(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        NormValue(BigRational::zero())
    }

    pub fn one() -> Self {
        NormValue(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn less_than_one(&self) -> bool {
        self.0 < BigRational::one()
    }

    /// The underlying natural number, when the value is integral.
    pub fn as_natural(&self) -> Option<BigUint> {
        self.0.is_integer().then(|| self.0.to_integer().magnitude().clone())
    }
}

impl std::ops::Mul for &NormValue {
    type Output = NormValue;
    fn mul(self, rhs: &NormValue) -> NormValue {
        NormValue(&self.0 * &rhs.0)
    }
}

impl Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// Exact rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Which of the three concrete ring families an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Integers,
    PolyOverFq,
    LocalizedIntegers,
}

/// A normed integral domain of characteristic not 2 together with its
/// fraction field.
///
/// Elements carry no reference to their ring; all arithmetic goes through
/// the ring value so that F_q tables are shared.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;
    type Frac: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn kind(&self) -> RingKind;
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// `a / b` when `b` divides `a` in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// A square root in the ring, if one exists.
    fn sqrt_exact(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn norm(&self, a: &Self::Elem) -> NormValue;

    fn embed(&self, a: &Self::Elem) -> Self::Frac;
    /// `num / den`; `None` when `den` is zero.
    fn ratio(&self, num: &Self::Elem, den: &Self::Elem) -> Option<Self::Frac>;
    fn frac_add(&self, a: &Self::Frac, b: &Self::Frac) -> Self::Frac;
    fn frac_sub(&self, a: &Self::Frac, b: &Self::Frac) -> Self::Frac;
    fn frac_mul(&self, a: &Self::Frac, b: &Self::Frac) -> Self::Frac;
    fn frac_neg(&self, a: &Self::Frac) -> Self::Frac;
    fn frac_inv(&self, a: &Self::Frac) -> Option<Self::Frac>;
    fn frac_is_zero(&self, a: &Self::Frac) -> bool;
    /// The element itself when `x` lies in the ring.
    fn to_integral(&self, x: &Self::Frac) -> Option<Self::Elem>;
    /// Canonical numerator and denominator.
    fn frac_parts(&self, x: &Self::Frac) -> (Self::Elem, Self::Elem);
    fn norm_fraction(&self, x: &Self::Frac) -> NormValue;

    /// Some `y` with `norm_fraction(x - y) < 1`.
    fn euclidean_step_scalar(&self, x: &Self::Frac) -> Self::Elem;

    /// Multiplicity of the prime `p` in `e`.
    fn valuation(&self, e: &Self::Elem, p: &Self::Elem) -> Result<u32>;
    fn is_squarefree(&self, e: &Self::Elem) -> Result<bool>;

    /// Small elements for bounded searches, in a fixed order starting at 0.
    /// For the integers this is `0, 1, -1, ..., b, -b` (height at most `b`);
    /// for F_q[t] all polynomials of degree at most `b`.
    fn small_elements(&self, bound: u32) -> Vec<Self::Elem>;
    /// Whether `a` is the distinguished representative of its unit class
    /// (positive integer, monic polynomial).
    fn is_normalized(&self, a: &Self::Elem) -> bool;

    /// The element as an ordinary integer, when it is one.
    fn as_integer(&self, a: &Self::Elem) -> Option<BigInt>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn format_frac(&self, x: &Self::Frac) -> String;

    fn frac_zero(&self) -> Self::Frac {
        self.embed(&self.zero())
    }

    fn frac_one(&self) -> Self::Frac {
        self.embed(&self.one())
    }

    fn frac_div(&self, a: &Self::Frac, b: &Self::Frac) -> Option<Self::Frac> {
        self.frac_inv(b).map(|inv| self.frac_mul(a, &inv))
    }

    fn frac_from_i64(&self, n: i64) -> Self::Frac {
        self.embed(&self.from_i64(n))
    }

    /// `x / 2`; characteristic is never 2.
    fn frac_half(&self, x: &Self::Frac) -> Self::Frac {
        let two = self.frac_from_i64(2);
        self.frac_div(x, &two).expect("2 is invertible")
    }
}
