//! The Euclidean step for `x1 x2 + ... + x_{2r-1} x_{2r} + q'(x')` over the
//! integers localized at a prime `p`, with `q'` diagonal and anisotropic.
//!
//! A point `x` is integral when every coordinate has `v_p >= 0`; the step
//! returns `y` (with entries 0 and 1) such that `v_p(q(x - y)) < 0`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::rings::{factor, Integers};

/// `r` hyperbolic planes on coordinates `(2i, 2i+1)` followed by
/// `sum a_k x_k^2` on the remaining ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitForm {
    planes: usize,
    anisotropic: Vec<BigInt>,
}

impl SplitForm {
    pub fn new(planes: usize, anisotropic: Vec<BigInt>) -> Result<Self> {
        if planes == 0 && anisotropic.is_empty() {
            return Err(Error::NotSplitForm("the form has no variables".into()));
        }
        if anisotropic.iter().any(|a| a.is_zero()) {
            return Err(Error::NotSplitForm("anisotropic coefficients must be nonzero".into()));
        }
        Ok(SplitForm { planes, anisotropic })
    }

    /// Recognize the split shape in an integer form.
    pub fn from_form(q: &QuadraticForm<Integers>) -> Result<Self> {
        let n = q.dim();
        let mut planes = 0;
        while 2 * planes + 1 < n && q.coeff(2 * planes, 2 * planes + 1).is_one() {
            planes += 1;
        }
        let h = 2 * planes;
        for i in 0..n {
            for j in i..n {
                let c = q.coeff(i, j);
                let expected_zero = if i < h {
                    !(i % 2 == 0 && j == i + 1)
                } else {
                    i != j
                };
                if expected_zero && !c.is_zero() {
                    return Err(Error::NotSplitForm(format!(
                        "unexpected coefficient at x{} x{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Self::new(planes, (h..n).map(|i| q.coeff(i, i).clone()).collect())
    }

    pub fn planes(&self) -> usize {
        self.planes
    }

    pub fn anisotropic(&self) -> &[BigInt] {
        &self.anisotropic
    }

    pub fn dim(&self) -> usize {
        2 * self.planes + self.anisotropic.len()
    }

    pub fn to_form(&self) -> QuadraticForm<Integers> {
        let mut entries: Vec<(usize, usize, BigInt)> =
            (0..self.planes).map(|i| (2 * i, 2 * i + 1, BigInt::one())).collect();
        let h = 2 * self.planes;
        entries.extend(self.anisotropic.iter().enumerate().map(|(k, a)| (h + k, h + k, a.clone())));
        QuadraticForm::new(Integers, self.dim(), entries).expect("split forms are nondegenerate")
    }

    pub fn evaluate(&self, x: &[BigRational]) -> BigRational {
        let h = 2 * self.planes;
        let mut acc: BigRational = (0..self.planes).map(|i| &x[2 * i] * &x[2 * i + 1]).sum();
        for (k, a) in self.anisotropic.iter().enumerate() {
            acc += BigRational::from_integer(a.clone()) * &x[h + k] * &x[h + k];
        }
        acc
    }
}

/// The branch of the case analysis that produced the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitCase {
    /// Hyperbolic coordinates integral; `y = 0` and `q'` carries the pole.
    Integral,
    /// `y = 0` works since `v(q(x)) <= v(x_{2r}) < 0`.
    PoleKept,
    /// `y_{2r-1} = 1` moves the value to `q(x) - x_{2r}`.
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitStep {
    pub y: Vec<BigInt>,
    pub case: SplitCase,
    /// Index of the plane used in the non-integral cases (0-based).
    pub plane: Option<usize>,
    pub value: BigRational,
    pub valuation: i64,
}

/// `v_p(x)`, `None` for zero.
pub fn rational_valuation(x: &BigRational, p: &BigUint) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let num = factor::multiplicity(x.numer().magnitude(), p) as i64;
    let den = factor::multiplicity(x.denom().magnitude(), p) as i64;
    Some(num - den)
}

fn v_or_inf(x: &BigRational, p: &BigUint) -> i64 {
    rational_valuation(x, p).unwrap_or(i64::MAX)
}

/// A `y` with `v_p(q(x - y)) < 0` for a point `x` that is not p-integral.
///
/// Planes are ordered by decreasing `v(x_{2i-1} x_{2i})` (stable), the last
/// one is oriented so that `v(x_{2r}) <= v(x_{2r-1})`, and the two cases on
/// the sign of `v(x_{2r})` are applied. When that plane is integral while an
/// earlier one is not, the plane holding the hyperbolic coordinate of least
/// valuation is used instead, so the integral case only occurs when all
/// hyperbolic coordinates are p-integral.
pub fn split_euclidean_step(s: &SplitForm, x: &[BigRational], p: u64) -> Result<SplitStep> {
    let n = s.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let pb = BigUint::from(p);
    if !factor::is_prime(&pb) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let v = |a: &BigRational| v_or_inf(a, &pb);
    if x.iter().all(|xi| v(xi) >= 0) {
        return Err(Error::AlreadyIntegral);
    }
    let r = s.planes();
    let h = 2 * r;
    let value_at = |y: &[BigInt]| {
        let diff: Vec<BigRational> = x
            .iter()
            .zip(y)
            .map(|(xi, yi)| xi - BigRational::from_integer(yi.clone()))
            .collect();
        s.evaluate(&diff)
    };
    let finish = |y: Vec<BigInt>, case: SplitCase, plane: Option<usize>| -> Result<SplitStep> {
        let value = value_at(&y);
        match rational_valuation(&value, &pb) {
            Some(val) if val < 0 => Ok(SplitStep {
                y,
                case,
                plane,
                value,
                valuation: val,
            }),
            _ if case == SplitCase::Integral => Err(Error::AnisotropicPartViolation),
            _ => Err(Error::StepFailed(format!(
                "v_{p}(q(x - y)) is not negative for y = {y:?}"
            ))),
        }
    };

    let hyper_integral = x[..h].iter().all(|xi| v(xi) >= 0);
    if hyper_integral {
        return finish(vec![BigInt::zero(); n], SplitCase::Integral, None);
    }

    // the plane of least product valuation, last among equals after a stable
    // sort by decreasing valuation
    let product_v = |i: usize| v(&(&x[2 * i] * &x[2 * i + 1]));
    let orient = |i: usize| -> (usize, usize) {
        // (index of x_{2r-1}, index of x_{2r})
        if v(&x[2 * i + 1]) <= v(&x[2 * i]) {
            (2 * i, 2 * i + 1)
        } else {
            (2 * i + 1, 2 * i)
        }
    };
    let mut plane = (0..r).fold(0, |best, i| if product_v(i) <= product_v(best) { i } else { best });
    let (mut u, mut w) = orient(plane);
    if v(&x[w]) >= 0 {
        // that plane is integral although another is not
        let least = (0..h).fold(0, |best, k| if v(&x[k]) < v(&x[best]) { k } else { best });
        plane = least / 2;
        (u, w) = orient(plane);
    }
    let zero = vec![BigInt::zero(); n];
    let at_zero = value_at(&zero);
    if v(&at_zero) <= v(&x[w]) {
        return finish(zero, SplitCase::PoleKept, Some(plane));
    }
    let mut y = zero;
    y[u] = BigInt::one();
    finish(y, SplitCase::Shifted, Some(plane))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| a.into()).collect()
    }

    #[test]
    fn examples() {
        let h = SplitForm::new(1, vec![]).unwrap();
        let st = split_euclidean_step(&h, &[q(1, 2), q(1, 2)], 2).unwrap();
        assert_eq!(st.y, ints(&[0, 0]));
        assert_eq!(st.value, q(1, 4));
        assert_eq!(st.valuation, -2);

        let st = split_euclidean_step(&h, &[q(1, 2), q(2, 1)], 2).unwrap();
        assert!(st.valuation < 0);
        assert_eq!(st.case, SplitCase::Shifted);
        // x1 = 1/2 is the pole; subtracting 1 from x2 leaves (1/2)(1) = 1/2
        assert_eq!(st.y, ints(&[0, 1]));

        let an = SplitForm::new(0, ints(&[1])).unwrap();
        let st = split_euclidean_step(&an, &[q(1, 3)], 3).unwrap();
        assert_eq!((st.y, st.valuation), (ints(&[0]), -2));
    }

    #[test]
    fn integral_plane_with_non_integral_partner_plane() {
        // x = (1/2, 4, 1, 1): the plane of least product valuation is integral
        let f = SplitForm::new(2, vec![]).unwrap();
        let st = split_euclidean_step(&f, &[q(1, 2), q(4, 1), q(1, 1), q(1, 1)], 2).unwrap();
        assert!(st.valuation < 0);
        assert_eq!(st.plane, Some(0));
    }

    #[test]
    fn errors() {
        let f = SplitForm::new(1, ints(&[1, 1, 1, 1])).unwrap();
        let x = vec![q(0, 1), q(0, 1), q(1, 2), q(1, 2), q(1, 2), q(1, 2)];
        // x1^2 + ... + x4^2 is not maximal at 2
        assert_eq!(split_euclidean_step(&f, &x, 2), Err(Error::AnisotropicPartViolation));
        assert_eq!(
            split_euclidean_step(&f, &vec![q(1, 1); 6], 2),
            Err(Error::AlreadyIntegral)
        );
        assert!(matches!(split_euclidean_step(&f, &x, 4), Err(Error::NotPrime(_))));
        assert!(SplitForm::new(0, vec![]).is_err());
    }

    #[test]
    fn recognizes_split_shape() {
        let f = SplitForm::new(2, ints(&[1, 3])).unwrap();
        assert_eq!(SplitForm::from_form(&f.to_form()), Ok(f));
        let g = QuadraticForm::diagonal_z(&[1, 1]).unwrap();
        assert_eq!(SplitForm::from_form(&g).unwrap().planes(), 0);
        let bad = QuadraticForm::new(
            Integers,
            3,
            vec![(0, 1, 1.into()), (0, 2, 1.into()), (2, 2, 1.into())],
        )
        .unwrap();
        assert!(matches!(SplitForm::from_form(&bad), Err(Error::NotSplitForm(_))));
    }
}
