//! Euclideanity `E(q) = sup_x inf_y |q(x - y)|` and Euclidean classification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::predicates::{anisotropic_constant_reduction_with, as_integer_form};
use crate::forms::{
    is_definite_diagonal, is_isotropic_bounded, is_positive_definite, lattice, AnyForm, Isotropy,
    QuadraticForm,
};
use crate::limits::Limits;
use crate::rings::{format_rational, Integers, Poly, PolyRing, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanityReport {
    pub kind: ValueKind,
    pub value: BigRational,
    pub witness: Vec<BigRational>,
    /// Absent for exact values.
    pub denom_bound: Option<u64>,
}

impl EuclideanityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "value": format_rational(&self.value),
            "witness": self.witness.iter().map(format_rational).collect::<Vec<_>>(),
            "denom_bound": self.denom_bound,
        })
    }
}

/// `(a_1 + ... + a_n) / 4` for a positive diagonal integer form.
pub fn euclideanity_diagonal_z(a: &[BigInt]) -> Result<BigRational> {
    if a.iter().any(|ai| !ai.is_positive()) {
        return Err(Error::NonPositiveCoefficient);
    }
    Ok(BigRational::new(a.iter().sum(), BigInt::from(4)))
}

/// `E(q, x)` for positive definite integer `q`, with a minimizing `y`.
pub fn euclideanity_at(
    q: &QuadraticForm<Integers>,
    x: &[BigRational],
    limits: &Limits,
) -> Result<(BigRational, Vec<BigInt>)> {
    if !is_positive_definite(q) {
        return Err(Error::NotPositiveDefinite);
    }
    lattice::closest_value(q, x, &limits.budget())
}

/// Maximum of `E(q, x)` over `x` in `(1/D') Z^n` for all `D' <= D`.
///
/// Points are visited by increasing `D'` and then lexicographically, each
/// coset once, and the first maximizer is kept. Diagonal forms with `D >= 2`
/// report the exact value, which is attained at the all-halves point.
pub fn euclideanity_search(
    q: &QuadraticForm<Integers>,
    denom_bound: u64,
    limits: &Limits,
) -> Result<EuclideanityReport> {
    if denom_bound < 1 {
        return Err(Error::BoundTooSmall);
    }
    if !is_positive_definite(q) {
        return Err(Error::NotPositiveDefinite);
    }
    let n = q.dim();
    let budget = limits.budget();
    let mut best = (BigRational::zero(), vec![BigRational::zero(); n]);
    for den in 2..=denom_bound {
        let total = den
            .checked_pow(n as u32)
            .ok_or(Error::EnumerationCapExceeded(limits.max_enum))?;
        let d = BigInt::from(den);
        for code in 0..total {
            let mut k = code;
            let c: Vec<u64> = (0..n)
                .map(|_| {
                    let v = k % den;
                    k /= den;
                    v
                })
                .rev()
                .collect();
            // skip points already seen with a smaller denominator
            let g = c.iter().fold(den, |acc, &v| acc.gcd(&v));
            if g != 1 {
                continue;
            }
            let x: Vec<BigRational> = c
                .iter()
                .map(|&v| BigRational::new(BigInt::from(v), d.clone()))
                .collect();
            let (value, _) = lattice::closest_value(q, &x, &budget)?;
            if value > best.0 {
                best = (value, x);
            }
        }
    }
    let exact = denom_bound >= 2
        && q.diagonal_coeffs()
            .map(|a| euclideanity_diagonal_z(&a).ok() == Some(best.0.clone()))
            .unwrap_or(false);
    Ok(EuclideanityReport {
        kind: if exact { ValueKind::Exact } else { ValueKind::LowerBound },
        value: best.0,
        witness: best.1,
        denom_bound: (!exact).then_some(denom_bound),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EuclideanClass {
    Euclidean,
    BoundaryEuclidean,
    NotEuclidean,
    Unknown,
}

impl std::fmt::Display for EuclideanClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EuclideanClass::Euclidean => "Euclidean",
            EuclideanClass::BoundaryEuclidean => "boundary-Euclidean",
            EuclideanClass::NotEuclidean => "not Euclidean",
            EuclideanClass::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanVerdict {
    pub class: EuclideanClass,
    pub reason: String,
    /// A value of `E(q, x)` backing the verdict, when one was computed.
    pub value: Option<BigRational>,
    pub witness: Option<Vec<String>>,
}

impl EuclideanVerdict {
    fn new(class: EuclideanClass, reason: impl Into<String>) -> Self {
        EuclideanVerdict {
            class,
            reason: reason.into(),
            value: None,
            witness: None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class,
            "reason": self.reason,
            "value": self.value.as_ref().map(format_rational),
            "witness": self.witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Anisotropy {
    Anisotropic(String),
    Isotropic(Vec<Poly>),
    Unknown,
}

/// Anisotropy of an F_q[t] form over F_q(t), as far as it can be settled:
/// exactly for constant forms, by the infinite place for diagonal forms,
/// and otherwise only by finding an isotropic vector of degree <= 1.
pub fn poly_anisotropy(q: &QuadraticForm<PolyRing>, limits: &Limits) -> Result<Anisotropy> {
    if q.terms().iter().all(|(_, _, c)| c.is_constant()) {
        return Ok(if anisotropic_constant_reduction_with(q, limits)? {
            Anisotropy::Anisotropic("the constant form is anisotropic over F_q".into())
        } else {
            match is_isotropic_bounded(q, 1, limits)? {
                Isotropy::Isotropic(v) => Anisotropy::Isotropic(v),
                _ => Anisotropy::Unknown,
            }
        });
    }
    if is_definite_diagonal(q) == Some(true) {
        return Ok(Anisotropy::Anisotropic("anisotropic at the infinite place".into()));
    }
    Ok(match is_isotropic_bounded(q, 1, limits)? {
        Isotropy::Isotropic(v) => Anisotropy::Isotropic(v),
        _ => Anisotropy::Unknown,
    })
}

fn classify_integer(q: &QuadraticForm<Integers>, limits: &Limits) -> Result<EuclideanVerdict> {
    let n = q.dim();
    let halves = vec![BigRational::new(BigInt::one(), BigInt::from(2)); n];
    let fmt = |x: &[BigRational]| Some(x.iter().map(format_rational).collect::<Vec<_>>());
    if let Some(diag) = q.diagonal_coeffs() {
        let all_pos = diag.iter().all(|a| a.is_positive());
        let all_neg = diag.iter().all(|a| a.is_negative());
        if all_pos || all_neg {
            let abs: Vec<BigInt> = diag.iter().map(|a| a.abs()).collect();
            let e = euclideanity_diagonal_z(&abs)?;
            let one = BigRational::one();
            let class = if e < one {
                EuclideanClass::Euclidean
            } else if e == one {
                EuclideanClass::BoundaryEuclidean
            } else {
                EuclideanClass::NotEuclidean
            };
            let reason = match class {
                EuclideanClass::Euclidean => "coefficient sum below 4",
                EuclideanClass::BoundaryEuclidean => "coefficient sum 4; E(q, x) = 1 is attained at all halves",
                _ => "coefficient sum above 4; E(q, x) > 1 at all halves",
            };
            // E(q, x) at all halves, computed independently of the formula
            let pos = if all_pos {
                q.clone()
            } else {
                QuadraticForm::diagonal(Integers, abs)?
            };
            let (at_halves, _) = lattice::closest_value(&pos, &halves, &limits.budget())?;
            debug_assert_eq!(at_halves, e);
            return Ok(EuclideanVerdict {
                class,
                reason: reason.into(),
                value: Some(at_halves),
                witness: fmt(&halves),
            });
        }
        return Ok(EuclideanVerdict::new(EuclideanClass::Unknown, "indefinite diagonal form"));
    }
    if !is_positive_definite(q) {
        return Ok(EuclideanVerdict::new(EuclideanClass::Unknown, "not positive definite"));
    }
    let report = euclideanity_search(q, 4, limits)?;
    if report.value >= BigRational::one() {
        Ok(EuclideanVerdict {
            class: EuclideanClass::NotEuclidean,
            reason: "a point with E(q, x) >= 1 was found".into(),
            value: Some(report.value),
            witness: fmt(&report.witness),
        })
    } else {
        Ok(EuclideanVerdict {
            class: EuclideanClass::Unknown,
            reason: "searched E(q, x) stays below 1 up to denominator 4; no covering bound".into(),
            value: Some(report.value),
            witness: fmt(&report.witness),
        })
    }
}

fn classify_poly(q: &QuadraticForm<PolyRing>, limits: &Limits) -> Result<EuclideanVerdict> {
    if q.terms().iter().any(|(_, _, c)| c.degree().unwrap_or(0) > 1) {
        return Ok(EuclideanVerdict::new(
            EuclideanClass::Unknown,
            "some coefficient has degree above 1",
        ));
    }
    Ok(match poly_anisotropy(q, limits)? {
        Anisotropy::Anisotropic(why) => EuclideanVerdict::new(
            EuclideanClass::Euclidean,
            format!("coefficient degrees <= 1 and {why}"),
        ),
        Anisotropy::Isotropic(v) => EuclideanVerdict {
            witness: Some(v.iter().map(|p| q.ring().format_elem(p)).collect()),
            ..EuclideanVerdict::new(EuclideanClass::Unknown, "isotropic")
        },
        Anisotropy::Unknown => {
            EuclideanVerdict::new(EuclideanClass::Unknown, "anisotropy not settled")
        }
    })
}

/// Classify a form as Euclidean, boundary-Euclidean or not Euclidean when
/// one of the implemented criteria applies.
pub fn is_euclidean(form: &AnyForm, limits: &Limits) -> Result<EuclideanVerdict> {
    match form {
        AnyForm::Z(q) => classify_integer(q, limits),
        AnyForm::FqT(q) => classify_poly(q, limits),
        AnyForm::Zloc(q) => {
            let Some(z) = as_integer_form(q) else {
                return Ok(EuclideanVerdict::new(
                    EuclideanClass::Unknown,
                    "coefficients are not integers",
                ));
            };
            let v = classify_integer(&z, limits)?;
            if v.class == EuclideanClass::Euclidean {
                Ok(EuclideanVerdict::new(
                    EuclideanClass::Euclidean,
                    format!("Euclidean over Z ({}), hence over {}", v.reason, q.ring().name()),
                ))
            } else {
                Ok(EuclideanVerdict::new(
                    EuclideanClass::Unknown,
                    "only Euclidean integer forms are transported to the localization",
                ))
            }
        }
    }
}

/// All multisets of positive integers with sum below 4, by size and then
/// lexicographically.
pub fn classify_euclidean_diagonal_z() -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, min: u32, sum: u32, len: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for a in min..4 {
            if sum + a >= 4 {
                break;
            }
            prefix.push(a);
            extend(prefix, a, sum + a, len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..4 {
        extend(&mut Vec::new(), 1, 0, len, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::descriptor::load_fixture;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| a.into()).collect()
    }

    #[test]
    fn diagonal_formula() {
        assert_eq!(euclideanity_diagonal_z(&ints(&[1, 1, 1])), Ok(q(3, 4)));
        assert_eq!(euclideanity_diagonal_z(&ints(&[1, 3])), Ok(q(1, 1)));
        assert_eq!(euclideanity_diagonal_z(&ints(&[1, 1, 1, 1])), Ok(q(1, 1)));
        assert_eq!(euclideanity_diagonal_z(&ints(&[1, 0])), Err(Error::NonPositiveCoefficient));
    }

    #[test]
    fn search_examples() {
        let lim = Limits::default();
        let sum3 = QuadraticForm::diagonal_z(&[1, 1, 1]).unwrap();
        let r = euclideanity_search(&sum3, 2, &lim).unwrap();
        assert_eq!(r.kind, ValueKind::Exact);
        assert_eq!(r.value, q(3, 4));
        assert_eq!(r.witness, vec![q(1, 2); 3]);
        let q2 = QuadraticForm::diagonal_z(&[2, 2]).unwrap();
        let r = euclideanity_search(&q2, 2, &lim).unwrap();
        assert_eq!((r.value, r.witness), (q(1, 1), vec![q(1, 2); 2]));
        let hex = load_fixture("hex").unwrap();
        let r = euclideanity_search(hex.as_integers().unwrap(), 3, &lim).unwrap();
        // deep hole of the hexagonal lattice at (1/3, 1/3)
        assert_eq!(r.kind, ValueKind::LowerBound);
        assert_eq!(r.value, q(1, 3));
        let indefinite = QuadraticForm::diagonal_z(&[1, -1]).unwrap();
        assert_eq!(euclideanity_search(&indefinite, 2, &lim), Err(Error::NotPositiveDefinite));
        assert_eq!(euclideanity_search(&sum3, 0, &lim), Err(Error::BoundTooSmall));
    }

    #[test]
    fn classification_examples() {
        let lim = Limits::default();
        let class = |f: &AnyForm| is_euclidean(f, &lim).unwrap().class;
        let z = |d: &[i64]| AnyForm::Z(QuadraticForm::diagonal_z(d).unwrap());
        assert_eq!(class(&z(&[1, 1, 1])), EuclideanClass::Euclidean);
        assert_eq!(class(&z(&[1, 1, 2])), EuclideanClass::BoundaryEuclidean);
        assert_eq!(class(&z(&[1, 1, 1, 1])), EuclideanClass::BoundaryEuclidean);
        assert_eq!(class(&z(&[1, 1, 3])), EuclideanClass::NotEuclidean);
        assert_eq!(class(&z(&[-1, -2])), EuclideanClass::Euclidean);
        assert_eq!(class(&load_fixture("fqt-sum2").unwrap()), EuclideanClass::Euclidean);
        assert_eq!(class(&load_fixture("hex").unwrap()), EuclideanClass::Unknown);
    }

    #[test]
    fn euclidean_diagonal_multisets() {
        let all = classify_euclidean_diagonal_z();
        assert_eq!(all, vec![vec![1], vec![2], vec![3], vec![1, 1], vec![1, 2], vec![1, 1, 1]]);
    }
}
