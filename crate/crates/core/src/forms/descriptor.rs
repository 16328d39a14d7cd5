//! JSON form descriptors and the fixture registry.
//!
//! `{"ring":"Z","dim":2,"coeffs":[[1,1,"1"],[1,2,"1"],[2,2,"1"]]}` is
//! `x1^2 + x1 x2 + x2^2`; positions are 1-based with `i <= j`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::rings::{ElemCodec, Integers, LocalizedIntegers, PolyRing, Ring, RingContext, RingDescriptor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormDescriptor {
    #[serde(flatten)]
    pub ring: RingDescriptor,
    pub dim: usize,
    pub coeffs: Vec<(usize, usize, Value)>,
}

/// A form over whichever ring a descriptor selects.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyForm {
    Z(QuadraticForm<Integers>),
    FqT(QuadraticForm<PolyRing>),
    Zloc(QuadraticForm<LocalizedIntegers>),
}

const FIXTURES: &str = include_str!("../../fixtures/forms.json");

fn build<R: ElemCodec>(ring: R, d: &FormDescriptor) -> Result<QuadraticForm<R>> {
    let entries = d
        .coeffs
        .iter()
        .map(|(i, j, v)| {
            if *i == 0 || *j == 0 {
                return Err(Error::Parse("coefficient positions are 1-based".into()));
            }
            Ok((i - 1, j - 1, ring.elem_from_json(v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    QuadraticForm::new(ring, d.dim, entries)
}

fn describe<R: ElemCodec>(ring: RingDescriptor, q: &QuadraticForm<R>) -> FormDescriptor {
    FormDescriptor {
        ring,
        dim: q.dim(),
        coeffs: q
            .terms()
            .into_iter()
            .map(|(i, j, c)| (i + 1, j + 1, q.ring().elem_to_json(&c)))
            .collect(),
    }
}

/// `2x1^2 + x1*x4 + (t + 1)x2^2`.
pub fn format_form<R: Ring>(q: &QuadraticForm<R>) -> String {
    let r = q.ring();
    let terms: Vec<String> = q
        .terms()
        .into_iter()
        .map(|(i, j, c)| {
            let mono = if i == j {
                format!("x{}^2", i + 1)
            } else {
                format!("x{}*x{}", i + 1, j + 1)
            };
            let s = r.format_elem(&c);
            if c == r.one() {
                mono
            } else if s.contains(' ') {
                format!("({s}){mono}")
            } else {
                format!("{s}{mono}")
            }
        })
        .collect();
    terms.join(" + ")
}

impl AnyForm {
    pub fn from_descriptor(d: &FormDescriptor) -> Result<Self> {
        Ok(match RingContext::from_descriptor(&d.ring)? {
            RingContext::Integers(r) => AnyForm::Z(build(r, d)?),
            RingContext::PolyOverFq(r) => AnyForm::FqT(build(r, d)?),
            RingContext::LocalizedIntegers(r) => AnyForm::Zloc(build(r, d)?),
        })
    }

    pub fn descriptor(&self) -> FormDescriptor {
        match self {
            AnyForm::Z(q) => describe(RingDescriptor::Z, q),
            AnyForm::FqT(q) => describe(RingContext::PolyOverFq(q.ring().clone()).descriptor(), q),
            AnyForm::Zloc(q) => {
                describe(RingContext::LocalizedIntegers(q.ring().clone()).descriptor(), q)
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: FormDescriptor =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("form descriptor: {e}")))?;
        Self::from_descriptor(&d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.descriptor()).expect("descriptor serializes")
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyForm::Z(q) => q.dim(),
            AnyForm::FqT(q) => q.dim(),
            AnyForm::Zloc(q) => q.dim(),
        }
    }

    pub fn ring_name(&self) -> String {
        match self {
            AnyForm::Z(q) => q.ring().name(),
            AnyForm::FqT(q) => q.ring().name(),
            AnyForm::Zloc(q) => q.ring().name(),
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            AnyForm::Z(q) => format_form(q),
            AnyForm::FqT(q) => format_form(q),
            AnyForm::Zloc(q) => format_form(q),
        }
    }

    pub fn as_integers(&self) -> Result<&QuadraticForm<Integers>> {
        match self {
            AnyForm::Z(q) => Ok(q),
            other => Err(Error::WrongRing {
                expected: "Z",
                got: other.ring_name(),
            }),
        }
    }

    pub fn as_poly(&self) -> Result<&QuadraticForm<PolyRing>> {
        match self {
            AnyForm::FqT(q) => Ok(q),
            other => Err(Error::WrongRing {
                expected: "F_q[t]",
                got: other.ring_name(),
            }),
        }
    }
}

pub fn fixture_names() -> Vec<String> {
    let all: serde_json::Map<String, Value> =
        serde_json::from_str(FIXTURES).expect("fixture file is valid JSON");
    all.keys().cloned().collect()
}

pub fn load_fixture(name: &str) -> Result<AnyForm> {
    let mut all: serde_json::Map<String, Value> =
        serde_json::from_str(FIXTURES).expect("fixture file is valid JSON");
    let v = all
        .remove(name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let d: FormDescriptor =
        serde_json::from_value(v).map_err(|e| Error::Parse(format!("fixture {name}: {e}")))?;
    AnyForm::from_descriptor(&d)
}
