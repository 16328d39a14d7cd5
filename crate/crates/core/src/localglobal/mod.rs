//! Local representability and the classical consequences: three squares,
//! sign-universality through the 290 criterion, unary and binary ADC tests,
//! and local maximality away from 2.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::descent::{
    adc_descend, represents_integrally, witness_search, DescentTrace, Outcome, Representation,
    WitnessSearch,
};
use crate::error::{Error, Result};
use crate::forms::predicates::discriminant_valuation;
use crate::forms::{is_positive_definite, Maximality, QuadraticForm};
use crate::limits::Limits;
use crate::rings::{factor, Integers, Ring};

/// `n = 4^a (8k + 7)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    Negative,
    FourPower { a: u32, k: BigInt },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Negative => f.write_str("negative"),
            Obstruction::FourPower { a, k } => {
                let n = BigInt::from(4).pow(*a) * (BigInt::from(8) * k + 7);
                write!(f, "{n} = 4^{a}(8·{k}+7)")
            }
        }
    }
}

/// `None` when `n` is a sum of three squares, else the reason it is not.
pub fn three_squares_obstruction(n: &BigInt) -> Option<Obstruction> {
    if n.is_negative() {
        return Some(Obstruction::Negative);
    }
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    let mut a = 0;
    let four = BigInt::from(4);
    while (&m % &four).is_zero() {
        m /= &four;
        a += 1;
    }
    let (k, r) = m.div_mod_floor(&BigInt::from(8));
    (r == BigInt::from(7)).then_some(Obstruction::FourPower { a, k })
}

pub fn three_squares_predicate(n: &BigInt) -> bool {
    three_squares_obstruction(n).is_none()
}

fn sum3() -> QuadraticForm<Integers> {
    QuadraticForm::diagonal_z(&[1, 1, 1]).expect("nondegenerate")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeSquares {
    Found {
        y: Vec<BigInt>,
        trace: Option<DescentTrace<Integers>>,
    },
    Impossible(Obstruction),
}

/// Predicate, then a witness by search, then descent.
pub fn sum_three_squares(n: &BigInt, t_bound: u32, limits: &Limits) -> Result<ThreeSquares> {
    if let Some(ob) = three_squares_obstruction(n) {
        return Ok(ThreeSquares::Impossible(ob));
    }
    if n.is_zero() {
        return Ok(ThreeSquares::Found {
            y: vec![BigInt::zero(); 3],
            trace: None,
        });
    }
    let q = sum3();
    let w = match witness_search(&q, n, t_bound, limits)? {
        WitnessSearch::Found(w) => w,
        WitnessSearch::NotFoundUpTo(b) => return Err(Error::SearchExhausted(b as u64)),
    };
    let trace = adc_descend(&q, &w, limits)?;
    match &trace.outcome {
        Outcome::Success(y) => Ok(ThreeSquares::Found {
            y: y.clone(),
            trace: Some(trace.clone()),
        }),
        Outcome::Stalled(why) => Err(Error::StepFailed(why.clone())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Place {
    Prime(u64),
    Real,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "p = {p}"),
            Place::Real => f.write_str("real"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A solution modulo `p^modulus_exponent` whose gradient has valuation
/// `gradient_valuation`, with `modulus_exponent = 2 gradient_valuation + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWitness {
    pub x: Vec<BigInt>,
    pub modulus_exponent: u32,
    pub gradient_valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalVerdict {
    pub place: Place,
    pub represents: Verdict,
    pub evidence: String,
    pub witness: Option<LiftWitness>,
}

fn valuation_i(n: &BigInt, p: &BigUint) -> Option<u32> {
    (!n.is_zero()).then(|| factor::multiplicity(n.magnitude(), p))
}

/// Whether `q(x) = d` has a solution over the p-adic integers, for diagonal
/// integer `q`.
///
/// A solution with gradient valuation `m` exists iff some `x mod p^(m+1)`
/// with that gradient valuation has `q(x) = d mod p^(2m+1)` (Hensel). Any
/// solution has `m <= v(2) + floor((v(d) + max v(a_i)) / 2)`, so the search
/// over `m` up to that bound decides the question; the bound never exceeds
/// `(k - 1) / 2` for `k = 2 v_p(4 d disc) + 3`.
pub fn zp_represents_diagonal(
    q: &QuadraticForm<Integers>,
    d: &BigInt,
    p: u64,
    limits: &Limits,
) -> Result<LocalVerdict> {
    let a = q.diagonal_coeffs().ok_or(Error::NotDiagonal)?;
    if d.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let pb = BigUint::from(p);
    if !factor::is_prime(&pb) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let v2 = u32::from(p == 2);
    let vd = valuation_i(d, &pb).expect("nonzero");
    let va: Vec<u32> = a.iter().map(|c| valuation_i(c, &pb).expect("nondegenerate")).collect();
    let vmax = *va.iter().max().expect("dimension at least 1");
    let m_max = v2 + (vd + vmax) / 2;
    let disc: BigInt = a.iter().product();
    let k_classical = 2 * valuation_i(&(BigInt::from(4) * d * disc), &pb).expect("nonzero") + 3;
    let budget = limits.budget();
    let n = a.len();
    let p128 = p as u128;
    for m in 0..=m_max {
        let modulus = p128.checked_pow(2 * m + 1).ok_or(Error::Overflow)?;
        let side = p128.checked_pow(m + 1).ok_or(Error::Overflow)?;
        let am: Vec<u128> = a
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(modulus)).to_u128().expect("reduced"))
            .collect();
        let dm = d.mod_floor(&BigInt::from(modulus)).to_u128().expect("reduced");
        let mut x = vec![0u128; n];
        loop {
            budget.charge(1)?;
            let grad = (0..n)
                .filter(|&i| x[i] != 0)
                .map(|i| {
                    let mut vx = 0;
                    let mut t = x[i];
                    while t % p128 == 0 {
                        t /= p128;
                        vx += 1;
                    }
                    v2 + va[i] + vx
                })
                .min();
            if grad == Some(m) {
                let mut acc = 0u128;
                for i in 0..n {
                    let sq = mulmod(x[i] % modulus, x[i] % modulus, modulus);
                    acc = (acc + mulmod(am[i], sq, modulus)) % modulus;
                }
                if acc == dm {
                    return Ok(LocalVerdict {
                        place: Place::Prime(p),
                        represents: Verdict::Yes,
                        evidence: format!(
                            "solution mod {p}^{} with gradient valuation {m} lifts",
                            2 * m + 1
                        ),
                        witness: Some(LiftWitness {
                            x: x.iter().map(|&v| BigInt::from(v)).collect(),
                            modulus_exponent: 2 * m + 1,
                            gradient_valuation: m,
                        }),
                    });
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                x[i] += 1;
                if x[i] < side {
                    break;
                }
                x[i] = 0;
            }
            if x.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(LocalVerdict {
        place: Place::Prime(p),
        represents: Verdict::No,
        evidence: format!(
            "no liftable solution with gradient valuation <= {m_max} (classical exponent k = {k_classical})"
        ),
        witness: None,
    })
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    match a.checked_mul(b) {
        Some(v) => v % m,
        None => ((BigUint::from(a) * BigUint::from(b)) % BigUint::from(m))
            .to_u128()
            .expect("reduced"),
    }
}

/// Over the reals: definite forms represent exactly the nonzero values of
/// their sign, indefinite ones every nonzero value.
pub fn real_represents(q: &QuadraticForm<Integers>, d: &BigInt) -> Result<LocalVerdict> {
    if d.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let neg_terms = q.terms().into_iter().map(|(i, j, c)| (i, j, -c)).collect();
    let neg = QuadraticForm::new(Integers, q.dim(), neg_terms)?;
    let (represents, evidence) = if is_positive_definite(q) {
        (d.is_positive(), "positive definite")
    } else if is_positive_definite(&neg) {
        (d.is_negative(), "negative definite")
    } else {
        (true, "indefinite")
    };
    Ok(LocalVerdict {
        place: Place::Real,
        represents: if represents { Verdict::Yes } else { Verdict::No },
        evidence: evidence.into(),
        witness: None,
    })
}

/// The least `m` in `1..=limit` not represented by `q`, for positive
/// definite `q`.
pub fn first_unrepresented(q: &QuadraticForm<Integers>, limit: u32, limits: &Limits) -> Result<Option<u32>> {
    if !is_positive_definite(q) {
        return Err(Error::NotPositiveDefinite);
    }
    for m in 1..=limit {
        if let Representation::No = represents_integrally(q, &BigInt::from(m), 0, limits)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether `q` represents every integer in `1..=290`.
pub fn sign_universal_check_290(q: &QuadraticForm<Integers>, limits: &Limits) -> Result<bool> {
    if q.dim() < 4 {
        return Err(Error::WrongDimension { min: 4, got: q.dim() });
    }
    Ok(first_unrepresented(q, 290, limits)?.is_none())
}

/// `a x^2` is ADC iff `a` is squarefree.
pub fn unary_adc<R: Ring>(r: &R, a: &R::Elem) -> Result<bool> {
    if r.is_zero(a) {
        return Err(Error::ZeroInput);
    }
    r.is_squarefree(a)
}

/// `a (x^2 + y^2)` is ADC iff `a` is squarefree with no prime factor
/// `1 mod 4`.
pub fn binary_aq_adc_z(a: &BigInt) -> Result<bool> {
    if !a.is_positive() {
        return Err(Error::NonPositiveCoefficient);
    }
    let fs = factor::factor(a.magnitude());
    let four = BigUint::from(4u32);
    Ok(fs.iter().all(|(p, e)| *e == 1 && (p % &four) != BigUint::one()))
}

/// `Maximal` when `v_p(disc) <= 1` at an odd prime, else `Unknown`.
pub fn local_maximality_nondyadic(q: &QuadraticForm<Integers>, p: u64) -> Result<Maximality> {
    if p == 2 {
        return Err(Error::DyadicPlace);
    }
    let pb = BigUint::from(p);
    if !factor::is_prime(&pb) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(if discriminant_valuation(q, &pb) <= 1 {
        Maximality::Maximal
    } else {
        Maximality::Unknown
    })
}
