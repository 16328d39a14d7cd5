use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rings::field::FiniteField;
use crate::rings::poly::{self, Poly};
use crate::rings::{NormValue, Ring, RingKind};

/// F_q[t] for an odd prime power q, normed by `|f| = base^deg f`.
///
/// The default base is q; every base >= 2 gives an equivalent norm.
#[derive(Debug, Clone)]
pub struct PolyRing {
    field: Arc<FiniteField>,
    norm_base: u64,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.norm_base == other.norm_base
    }
}

/// An element of F_q(t) in lowest terms with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }
}

impl PolyRing {
    pub fn new(q: u32) -> Result<Self> {
        Self::with_norm_base(q, q as u64)
    }

    pub fn with_norm_base(q: u32, norm_base: u64) -> Result<Self> {
        if norm_base < 2 {
            return Err(Error::InvalidRing("norm base must be at least 2".into()));
        }
        Ok(PolyRing {
            field: Arc::new(FiniteField::new(q)?),
            norm_base,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn norm_base(&self) -> u64 {
        self.norm_base
    }

    /// Parse coefficients given low to high as field codes.
    pub fn poly(&self, coeffs: &[u32]) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.q()) {
            return Err(Error::Parse(format!(
                "coefficient {c} is not an element of F_{}",
                self.q()
            )));
        }
        Ok(Poly::from_coeffs(coeffs.to_vec()))
    }

    fn normalize(&self, num: Poly, den: Poly) -> RatFunc {
        let f = &*self.field;
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::constant(1),
            };
        }
        let g = poly::gcd(f, &num, &den);
        let num = poly::div_exact(f, &num, &g).expect("gcd divides");
        let den = poly::div_exact(f, &den, &g).expect("gcd divides");
        let inv = f.inv(den.leading()).expect("nonzero denominator");
        RatFunc {
            num: poly::scale(f, &num, inv),
            den: poly::scale(f, &den, inv),
        }
    }

    fn base_pow(&self, e: usize) -> BigUint {
        num_traits::pow(BigUint::from(self.norm_base), e)
    }

    pub fn degree(&self, a: &Poly) -> Option<usize> {
        a.degree()
    }
}

impl Ring for PolyRing {
    type Elem = Poly;
    type Frac = RatFunc;

    fn kind(&self) -> RingKind {
        RingKind::PolyOverFq
    }

    fn name(&self) -> String {
        format!("F_{}[t]", self.q())
    }

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(1)
    }

    fn from_i64(&self, n: i64) -> Poly {
        Poly::constant(self.field.from_i64(n))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        poly::add(&self.field, a, b)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        poly::sub(&self.field, a, b)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        poly::mul(&self.field, a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        poly::neg(&self.field, a)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &Poly) -> bool {
        a.degree() == Some(0)
    }

    fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        poly::div_exact(&self.field, a, b)
    }

    fn sqrt_exact(&self, a: &Poly) -> Option<Poly> {
        poly::sqrt(&self.field, a)
    }

    fn norm(&self, a: &Poly) -> NormValue {
        match a.degree() {
            None => NormValue::zero(),
            Some(d) => NormValue::from_natural(self.base_pow(d)),
        }
    }

    fn embed(&self, a: &Poly) -> RatFunc {
        RatFunc {
            num: a.clone(),
            den: Poly::constant(1),
        }
    }

    fn ratio(&self, num: &Poly, den: &Poly) -> Option<RatFunc> {
        (!den.is_zero()).then(|| self.normalize(num.clone(), den.clone()))
    }

    fn frac_add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &*self.field;
        let num = poly::add(f, &poly::mul(f, &a.num, &b.den), &poly::mul(f, &b.num, &a.den));
        self.normalize(num, poly::mul(f, &a.den, &b.den))
    }

    fn frac_sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.frac_add(a, &self.frac_neg(b))
    }

    fn frac_mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &*self.field;
        self.normalize(poly::mul(f, &a.num, &b.num), poly::mul(f, &a.den, &b.den))
    }

    fn frac_neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: poly::neg(&self.field, &a.num),
            den: a.den.clone(),
        }
    }

    fn frac_inv(&self, a: &RatFunc) -> Option<RatFunc> {
        (!a.num.is_zero()).then(|| self.normalize(a.den.clone(), a.num.clone()))
    }

    fn frac_is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn to_integral(&self, x: &RatFunc) -> Option<Poly> {
        (x.den.degree() == Some(0)).then(|| x.num.clone())
    }

    fn frac_parts(&self, x: &RatFunc) -> (Poly, Poly) {
        (x.num.clone(), x.den.clone())
    }

    fn norm_fraction(&self, x: &RatFunc) -> NormValue {
        let Some(dn) = x.num.degree() else {
            return NormValue::zero();
        };
        let dd = x.den.degree().expect("nonzero denominator");
        let value = if dn >= dd {
            BigRational::from_integer(BigInt::from(self.base_pow(dn - dd)))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(self.base_pow(dd - dn)))
        };
        NormValue::new(value)
    }

    fn euclidean_step_scalar(&self, x: &RatFunc) -> Poly {
        poly::divrem(&self.field, &x.num, &x.den).0
    }

    fn valuation(&self, e: &Poly, p: &Poly) -> Result<u32> {
        if e.is_zero() {
            return Err(Error::ZeroValuation);
        }
        if !poly::is_irreducible(&self.field, p) {
            return Err(Error::NotPrime(self.format_elem(p)));
        }
        let mut k = 0;
        let mut cur = e.clone();
        while let Some(next) = poly::div_exact(&self.field, &cur, p) {
            cur = next;
            k += 1;
        }
        Ok(k)
    }

    fn is_squarefree(&self, e: &Poly) -> Result<bool> {
        if e.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(poly::is_squarefree(&self.field, e))
    }

    fn small_elements(&self, bound: u32) -> Vec<Poly> {
        poly::all_up_to_degree(self.q(), bound as usize).collect()
    }

    fn is_normalized(&self, a: &Poly) -> bool {
        a.leading() == 1
    }

    fn as_integer(&self, _a: &Poly) -> Option<BigInt> {
        None
    }

    fn format_elem(&self, a: &Poly) -> String {
        format_poly(a)
    }

    fn format_frac(&self, x: &RatFunc) -> String {
        if x.den.is_constant() {
            format_poly(&x.num)
        } else {
            format!("({})/({})", format_poly(&x.num), format_poly(&x.den))
        }
    }
}

/// Human-readable form such as `2t^2 + t + 1`; coefficients are field codes.
pub fn format_poly(a: &Poly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in a.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}t"),
            _ => format!("{coef}t^{i}"),
        });
    }
    terms.join(" + ")
}
