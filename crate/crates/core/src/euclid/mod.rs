//! Euclidean steps for forms, Euclideanity, and the split-form step over
//! the integers localized at a prime.

pub mod euclideanity;
pub mod split;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::predicates::as_integer_form;
use crate::forms::{is_positive_definite, lattice, QuadraticForm};
use crate::limits::Limits;
use crate::rings::{Integers, LocalizedIntegers, Poly, PolyRing, Ring};

pub use euclideanity::{
    classify_euclidean_diagonal_z, euclideanity_at, euclideanity_diagonal_z, euclideanity_search,
    is_euclidean, Anisotropy, EuclideanClass, EuclideanVerdict, EuclideanityReport, ValueKind,
};
pub use split::{split_euclidean_step, SplitCase, SplitForm, SplitStep};

/// How a form's Euclidean step is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EuclideanFamily {
    /// Positive diagonal integer form with coefficient sum below 4:
    /// coordinatewise rounding.
    DiagonalRounding,
    /// F_q[t] form with coefficients of degree at most 1: coordinatewise
    /// polynomial division.
    PolynomialDivision,
    /// Positive definite integer form: exact closest vector.
    ClosestVector,
    /// Integer-coefficient form over Z[1/S] whose integer form is in one of
    /// the integer families; steps are transported by clearing S-units.
    Localized,
}

impl std::fmt::Display for EuclideanFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EuclideanFamily::DiagonalRounding => "diagonal rounding",
            EuclideanFamily::PolynomialDivision => "polynomial division",
            EuclideanFamily::ClosestVector => "closest vector",
            EuclideanFamily::Localized => "localized integer step",
        })
    }
}

/// Rings whose forms have an implemented Euclidean step.
pub trait StepRing: Ring {
    fn family(q: &QuadraticForm<Self>) -> Result<EuclideanFamily>;

    /// A candidate `y`; postconditions are checked by [`euclidean_step_form`].
    fn raw_step(q: &QuadraticForm<Self>, x: &[Self::Frac], limits: &Limits) -> Result<Vec<Self::Elem>>;
}

fn integer_family(q: &QuadraticForm<Integers>) -> Result<EuclideanFamily> {
    if let Some(d) = q.diagonal_coeffs() {
        let sum: BigInt = d.iter().sum();
        if d.iter().all(|a| a.is_positive()) && sum < BigInt::from(4) {
            return Ok(EuclideanFamily::DiagonalRounding);
        }
    }
    if is_positive_definite(q) {
        return Ok(EuclideanFamily::ClosestVector);
    }
    Err(Error::NotImplementedFamily)
}

fn integer_step(
    q: &QuadraticForm<Integers>,
    x: &[BigRational],
    limits: &Limits,
) -> Result<Vec<BigInt>> {
    match integer_family(q)? {
        EuclideanFamily::DiagonalRounding => {
            Ok(x.iter().map(|xi| Integers.euclidean_step_scalar(xi)).collect())
        }
        _ => Ok(lattice::closest_value(q, x, &limits.budget())?.1),
    }
}

impl StepRing for Integers {
    fn family(q: &QuadraticForm<Self>) -> Result<EuclideanFamily> {
        integer_family(q)
    }

    fn raw_step(q: &QuadraticForm<Self>, x: &[BigRational], limits: &Limits) -> Result<Vec<BigInt>> {
        integer_step(q, x, limits)
    }
}

impl StepRing for PolyRing {
    fn family(q: &QuadraticForm<Self>) -> Result<EuclideanFamily> {
        if q.terms().iter().all(|(_, _, c)| c.degree().unwrap_or(0) <= 1) {
            Ok(EuclideanFamily::PolynomialDivision)
        } else {
            Err(Error::NotImplementedFamily)
        }
    }

    fn raw_step(q: &QuadraticForm<Self>, x: &[Self::Frac], _limits: &Limits) -> Result<Vec<Poly>> {
        Self::family(q)?;
        let r = q.ring();
        Ok(x.iter().map(|xi| r.euclidean_step_scalar(xi)).collect())
    }
}

impl StepRing for LocalizedIntegers {
    fn family(q: &QuadraticForm<Self>) -> Result<EuclideanFamily> {
        let z = as_integer_form(q).ok_or(Error::NotImplementedFamily)?;
        integer_family(&z)?;
        Ok(EuclideanFamily::Localized)
    }

    /// Write `x = a / b` with `b = s b'`, `s` an S-product and `b'` prime to
    /// S; take an integer step `y` for `a / b'` and return `y / s`.
    fn raw_step(q: &QuadraticForm<Self>, x: &[BigRational], limits: &Limits) -> Result<Vec<BigRational>> {
        let z = as_integer_form(q).ok_or(Error::NotImplementedFamily)?;
        let r = q.ring();
        let b = x.iter().fold(BigInt::one(), |acc, xi| acc.lcm(xi.denom()));
        let (s, b_free) = r.split(b.magnitude());
        let s = BigInt::from(s);
        let b_free = BigRational::from_integer(BigInt::from(b_free));
        let scaled: Vec<BigRational> = x
            .iter()
            .map(|xi| xi * BigRational::from_integer(b.clone()) / &b_free)
            .collect();
        let y = integer_step(&z, &scaled, limits)?;
        Ok(y.into_iter().map(|yi| BigRational::new(yi, s.clone())).collect())
    }
}

/// The implemented family of `q`, if any.
pub fn euclidean_family<R: StepRing>(q: &QuadraticForm<R>) -> Result<EuclideanFamily> {
    R::family(q)
}

/// `y` in R^n with `|q(x - y)| < 1`, and `q(x - y) != 0` when `x` is not
/// integral.
pub fn euclidean_step_form<R: StepRing>(
    q: &QuadraticForm<R>,
    x: &[R::Frac],
    limits: &Limits,
) -> Result<Vec<R::Elem>> {
    if x.len() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got: x.len(),
        });
    }
    let y = R::raw_step(q, x, limits)?;
    let r = q.ring();
    let diff: Vec<R::Frac> = x.iter().zip(&y).map(|(xi, yi)| r.frac_sub(xi, &r.embed(yi))).collect();
    let value = q.evaluate(&diff)?;
    if !r.norm_fraction(&value).less_than_one() {
        return Err(Error::StepFailed(format!(
            "|q(x - y)| = {} is not below 1",
            crate::rings::format_rational(r.norm_fraction(&value).value())
        )));
    }
    let integral = x.iter().all(|xi| r.to_integral(xi).is_some());
    if !integral && r.frac_is_zero(&value) {
        return Err(Error::StepFailed("q(x - y) = 0 at a non-integral point; the form is isotropic".into()));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RatFunc;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn diagonal_rounding_examples() {
        let lim = Limits::default();
        let sum3 = QuadraticForm::diagonal_z(&[1, 1, 1]).unwrap();
        let y = euclidean_step_form(&sum3, &[q(1, 2), q(1, 2), q(1, 2)], &lim).unwrap();
        assert_eq!(y, vec![BigInt::from(0); 3]);
        let unary = QuadraticForm::diagonal_z(&[1]).unwrap();
        assert_eq!(euclidean_step_form(&unary, &[q(7, 2)], &lim).unwrap(), vec![BigInt::from(3)]);
        assert_eq!(euclidean_family(&sum3), Ok(EuclideanFamily::DiagonalRounding));
    }

    #[test]
    fn polynomial_division_example() {
        let r = PolyRing::new(3).unwrap();
        let f = QuadraticForm::diagonal(r.clone(), vec![r.one(), r.one()]).unwrap();
        let t = r.poly(&[0, 1]).unwrap();
        let x: Vec<RatFunc> = vec![r.ratio(&r.poly(&[1, 0, 1]).unwrap(), &t).unwrap(), r.frac_zero()];
        let y = euclidean_step_form(&f, &x, &Limits::default()).unwrap();
        assert_eq!(y, vec![t.clone(), r.zero()]);
        let diff = r.frac_sub(&x[0], &r.embed(&y[0]));
        let v = f.evaluate(&[diff, r.frac_zero()]).unwrap();
        assert_eq!(v, r.ratio(&r.one(), &r.mul(&t, &t)).unwrap());
        assert_eq!(r.norm_fraction(&v).value(), &q(1, 9));
    }

    #[test]
    fn unsupported_forms_are_reported() {
        let lim = Limits::default();
        let indefinite = QuadraticForm::diagonal_z(&[1, -2]).unwrap();
        assert_eq!(
            euclidean_step_form(&indefinite, &[q(1, 2), q(1, 3)], &lim),
            Err(Error::NotImplementedFamily)
        );
        let r = PolyRing::new(3).unwrap();
        let t2 = r.poly(&[0, 0, 1]).unwrap();
        let f = QuadraticForm::diagonal(r.clone(), vec![r.one(), t2]).unwrap();
        assert_eq!(euclidean_family(&f), Err(Error::NotImplementedFamily));
    }

    #[test]
    fn closest_vector_step_fails_off_the_euclidean_region() {
        let lim = Limits::default();
        let sum4 = QuadraticForm::diagonal_z(&[1, 1, 1, 1]).unwrap();
        assert!(matches!(
            euclidean_step_form(&sum4, &vec![q(1, 2); 4], &lim),
            Err(Error::StepFailed(_))
        ));
        let y = euclidean_step_form(&sum4, &[q(1, 2), q(1, 2), q(1, 2), q(0, 1)], &lim).unwrap();
        assert_eq!(y.len(), 4);
    }

    #[test]
    fn isotropic_polynomial_form_is_caught() {
        let r = PolyRing::new(5).unwrap();
        let f = QuadraticForm::diagonal(r.clone(), vec![r.one(), r.one()]).unwrap();
        let t = r.poly(&[0, 1]).unwrap();
        // 2^2 + 1 = 0 in F_5, so q(2/t, 1/t) = 0
        let x = vec![r.ratio(&r.from_i64(2), &t).unwrap(), r.ratio(&r.one(), &t).unwrap()];
        assert!(matches!(euclidean_step_form(&f, &x, &Limits::default()), Err(Error::StepFailed(_))));
    }

    #[test]
    fn localized_step_clears_s_units() {
        let r = LocalizedIntegers::new([2]).unwrap();
        let f = QuadraticForm::diagonal(r.clone(), vec![q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        let x = vec![q(5, 12), q(1, 3), q(7, 6)];
        let y = euclidean_step_form(&f, &x, &Limits::default()).unwrap();
        assert!(y.iter().all(|yi| r.to_integral(yi).is_some()));
        let diff: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        let v = f.evaluate(&diff).unwrap();
        assert!(r.norm_fraction(&v).less_than_one());
        assert!(!r.frac_is_zero(&v));
    }
}
