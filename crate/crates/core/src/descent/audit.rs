//! Non-ADC certificates and empirical ADC audits.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::search::{represents_integrally, witness_search, Representation, SearchRing, WitnessSearch};
use super::Witness;
use crate::error::{Error, Result};
use crate::forms::{is_positive_definite, QuadraticForm};
use crate::limits::Limits;
use crate::rings::{Integers, Ring};

/// `q` represents `a^2 b` (at `witness_a2b`) but not `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub a: BigInt,
    pub b: BigInt,
    pub witness_a2b: Vec<BigInt>,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "witness_a2b": self.witness_a2b.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateSearch {
    Found(Certificate),
    NotFoundUpTo { a_bound: u32, b_bound: u32 },
}

fn require_definite(q: &QuadraticForm<Integers>) -> Result<()> {
    if is_positive_definite(q) {
        Ok(())
    } else {
        Err(Error::NotDecidable)
    }
}

/// `Some(certificate)` when `(a, b)` is a non-ADC certificate for `q`.
pub fn non_adc_certificate_check(
    q: &QuadraticForm<Integers>,
    a: &BigInt,
    b: &BigInt,
    limits: &Limits,
) -> Result<Option<Certificate>> {
    require_definite(q)?;
    if represents_integrally(q, b, 0, limits)? != Representation::No {
        return Ok(None);
    }
    let target = a * a * b;
    Ok(match represents_integrally(q, &target, 0, limits)? {
        Representation::Yes(x) => Some(Certificate {
            a: a.clone(),
            b: b.clone(),
            witness_a2b: x,
        }),
        _ => None,
    })
}

/// The first certificate with `1 <= a <= a_bound` (outer) and
/// `1 <= b <= b_bound` (inner).
pub fn non_adc_certificate_search(
    q: &QuadraticForm<Integers>,
    a_bound: u32,
    b_bound: u32,
    limits: &Limits,
) -> Result<CertificateSearch> {
    require_definite(q)?;
    let mut unrepresented = Vec::new();
    for b in 1..=b_bound as i64 {
        let b = BigInt::from(b);
        if represents_integrally(q, &b, 0, limits)? == Representation::No {
            unrepresented.push(b);
        }
    }
    for a in 1..=a_bound as i64 {
        let a = BigInt::from(a);
        for b in &unrepresented {
            if let Representation::Yes(x) = represents_integrally(q, &(&a * &a * b), 0, limits)? {
                return Ok(CertificateSearch::Found(Certificate {
                    a,
                    b: b.clone(),
                    witness_a2b: x,
                }));
            }
        }
    }
    Ok(CertificateSearch::NotFoundUpTo { a_bound, b_bound })
}

/// Outcome of checking a range of targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdcAudit<R: Ring> {
    pub checked: usize,
    /// Targets with a rational witness but no integral representation.
    pub violations: Vec<Witness<R>>,
    /// Targets with a witness whose integral search was not exhaustive.
    pub inconclusive: Vec<R::Elem>,
    /// Targets without a witness up to the bound.
    pub no_witness: Vec<R::Elem>,
}

impl<R: SearchRing> AdcAudit<R> {
    pub fn to_json(&self, r: &R) -> Value {
        json!({
            "checked": self.checked,
            "violations": self.violations.iter().map(|w| json!({
                "d": r.elem_to_json(&w.d),
                "t": r.elem_to_json(&w.t),
                "xprime": r.vec_to_json(&w.xprime),
            })).collect::<Vec<_>>(),
            "inconclusive": self.inconclusive.iter().map(|d| r.elem_to_json(d)).collect::<Vec<_>>(),
            "no_witness": self.no_witness.iter().map(|d| r.elem_to_json(d)).collect::<Vec<_>>(),
        })
    }
}

/// For each target with a witness up to `t_bound`, look for an integral
/// representation within `box_bound`.
pub fn is_adc_empirical<R: SearchRing>(
    q: &QuadraticForm<R>,
    targets: &[R::Elem],
    t_bound: u32,
    box_bound: u32,
    limits: &Limits,
) -> Result<AdcAudit<R>> {
    let r = q.ring();
    let mut audit = AdcAudit {
        checked: 0,
        violations: Vec::new(),
        inconclusive: Vec::new(),
        no_witness: Vec::new(),
    };
    for d in targets {
        if r.is_zero(d) {
            continue;
        }
        audit.checked += 1;
        let w = match witness_search(q, d, t_bound, limits)? {
            WitnessSearch::Found(w) => w,
            WitnessSearch::NotFoundUpTo(_) => {
                audit.no_witness.push(d.clone());
                continue;
            }
        };
        match represents_integrally(q, d, box_bound, limits)? {
            Representation::Yes(_) => {}
            Representation::No => audit.violations.push(w),
            Representation::NoUpTo(_) => audit.inconclusive.push(d.clone()),
        }
    }
    Ok(audit)
}

/// Integer targets `lo..=hi`.
pub fn integer_range(lo: i64, hi: i64) -> Vec<BigInt> {
    (lo..=hi).map(BigInt::from).collect()
}
