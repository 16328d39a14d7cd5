//! Runtime ring selection and the JSON encodings of ring elements.
//!
//! Ring descriptors: `{"ring":"Z"}`, `{"ring":"FqT","q":3}` (optionally with
//! `"norm_base"`), `{"ring":"Zloc","primes":[2,5]}`. Integers are decimal
//! strings (plain JSON numbers are accepted on input), polynomials are arrays
//! of field codes low to high, elements of Z[1/S] are strings `"a"` or `"a/b"`,
//! and fractions are `{"num":…, "den":…}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rings::{Integers, LocalizedIntegers, Poly, PolyRing, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ring")]
pub enum RingDescriptor {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "FqT")]
    FqT {
        q: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        norm_base: Option<u64>,
    },
    #[serde(rename = "Zloc")]
    Zloc { primes: Vec<u64> },
}

/// The active coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub enum RingContext {
    Integers(Integers),
    PolyOverFq(PolyRing),
    LocalizedIntegers(LocalizedIntegers),
}

impl RingContext {
    pub fn from_descriptor(d: &RingDescriptor) -> Result<Self> {
        Ok(match d {
            RingDescriptor::Z => RingContext::Integers(Integers),
            RingDescriptor::FqT { q, norm_base } => RingContext::PolyOverFq(
                PolyRing::with_norm_base(*q, norm_base.unwrap_or(*q as u64))?,
            ),
            RingDescriptor::Zloc { primes } => {
                RingContext::LocalizedIntegers(LocalizedIntegers::new(primes.iter().copied())?)
            }
        })
    }

    pub fn descriptor(&self) -> RingDescriptor {
        match self {
            RingContext::Integers(_) => RingDescriptor::Z,
            RingContext::PolyOverFq(r) => RingDescriptor::FqT {
                q: r.q(),
                norm_base: (r.norm_base() != r.q() as u64).then_some(r.norm_base()),
            },
            RingContext::LocalizedIntegers(r) => RingDescriptor::Zloc {
                primes: r.primes().iter().map(|p| p.try_into().expect("small prime")).collect(),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            RingContext::Integers(r) => r.name(),
            RingContext::PolyOverFq(r) => r.name(),
            RingContext::LocalizedIntegers(r) => r.name(),
        }
    }
}

/// JSON encoding of elements and fractions of a ring.
pub trait ElemCodec: Ring {
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    fn frac_to_json(&self, x: &Self::Frac) -> Value {
        let (n, d) = self.frac_parts(x);
        json!({"num": self.elem_to_json(&n), "den": self.elem_to_json(&d)})
    }

    /// Accepts `{"num":…,"den":…}` or a bare element.
    fn frac_from_json(&self, v: &Value) -> Result<Self::Frac> {
        if let Some(obj) = v.as_object() {
            let num = obj
                .get("num")
                .ok_or_else(|| Error::Parse("fraction needs \"num\"".into()))?;
            let den = match obj.get("den") {
                Some(d) => self.elem_from_json(d)?,
                None => self.one(),
            };
            let num = self.elem_from_json(num)?;
            return self
                .ratio(&num, &den)
                .ok_or_else(|| Error::Parse("zero denominator".into()));
        }
        Ok(self.embed(&self.elem_from_json(v)?))
    }

    fn vec_to_json(&self, xs: &[Self::Elem]) -> Value {
        Value::Array(xs.iter().map(|x| self.elem_to_json(x)).collect())
    }

    fn vec_from_json(&self, v: &Value) -> Result<Vec<Self::Elem>> {
        v.as_array()
            .ok_or_else(|| Error::Parse("expected an array of elements".into()))?
            .iter()
            .map(|x| self.elem_from_json(x))
            .collect()
    }

    fn frac_vec_to_json(&self, xs: &[Self::Frac]) -> Value {
        Value::Array(xs.iter().map(|x| self.frac_to_json(x)).collect())
    }

    fn frac_vec_from_json(&self, v: &Value) -> Result<Vec<Self::Frac>> {
        v.as_array()
            .ok_or_else(|| Error::Parse("expected an array of fractions".into()))?
            .iter()
            .map(|x| self.frac_from_json(x))
            .collect()
    }
}

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("'{s}' is not an integer")))
}

/// `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_bigint(d)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_bigint(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
    }
}

fn json_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => parse_bigint(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_bigint(&n.to_string()),
        _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

impl ElemCodec for Integers {
    fn elem_to_json(&self, a: &BigInt) -> Value {
        Value::String(a.to_string())
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigInt> {
        json_integer(v)
    }

    fn frac_to_json(&self, x: &BigRational) -> Value {
        Value::String(crate::rings::format_rational(x))
    }

    /// Also accepts a `"p/q"` string.
    fn frac_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Object(obj) => {
                let num = json_integer(obj.get("num").unwrap_or(&Value::Null))?;
                let den = match obj.get("den") {
                    Some(d) => json_integer(d)?,
                    None => BigInt::from(1),
                };
                self.ratio(&num, &den)
                    .ok_or_else(|| Error::Parse("zero denominator".into()))
            }
            _ => Ok(self.embed(&json_integer(v)?)),
        }
    }
}

impl ElemCodec for PolyRing {
    fn elem_to_json(&self, a: &Poly) -> Value {
        Value::Array(a.coeffs().iter().map(|&c| json!(c)).collect())
    }

    fn elem_from_json(&self, v: &Value) -> Result<Poly> {
        let arr = match v {
            Value::Array(a) => a.clone(),
            Value::Number(_) => vec![v.clone()],
            _ => return Err(Error::Parse(format!("expected a coefficient array, got {v}"))),
        };
        let coeffs = arr
            .iter()
            .map(|c| {
                c.as_u64()
                    .and_then(|c| u32::try_from(c).ok())
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {c}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        self.poly(&coeffs)
    }
}

impl ElemCodec for LocalizedIntegers {
    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(crate::rings::format_rational(a))
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        let x = match v {
            Value::String(s) => parse_rational(s)?,
            _ => BigRational::from_integer(json_integer(v)?),
        };
        if !self.is_s_unit_denominator(x.denom()) {
            return Err(Error::Parse(format!(
                "{} is not an element of {}",
                crate::rings::format_rational(&x),
                self.name()
            )));
        }
        Ok(x)
    }

    fn frac_to_json(&self, x: &BigRational) -> Value {
        Value::String(crate::rings::format_rational(x))
    }

    fn frac_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Object(obj) => {
                let num = obj
                    .get("num")
                    .ok_or_else(|| Error::Parse("fraction needs \"num\"".into()))?;
                let num = match num {
                    Value::String(s) => parse_rational(s)?,
                    other => BigRational::from_integer(json_integer(other)?),
                };
                let den = match obj.get("den") {
                    Some(Value::String(s)) => parse_rational(s)?,
                    Some(other) => BigRational::from_integer(json_integer(other)?),
                    None => BigRational::from_integer(1.into()),
                };
                self.ratio(&num, &den)
                    .ok_or_else(|| Error::Parse("zero denominator".into()))
            }
            _ => Ok(BigRational::from_integer(json_integer(v)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_parse() {
        let d: RingDescriptor = serde_json::from_str(r#"{"ring":"FqT","q":3}"#).unwrap();
        assert_eq!(d, RingDescriptor::FqT { q: 3, norm_base: None });
        let d: RingDescriptor = serde_json::from_str(r#"{"ring":"Zloc","primes":[2,5]}"#).unwrap();
        let ctx = RingContext::from_descriptor(&d).unwrap();
        assert_eq!(ctx.descriptor(), d);
        assert_eq!(ctx.name(), "Z[1/2,5]");
        let bad: RingDescriptor = serde_json::from_str(r#"{"ring":"FqT","q":4}"#).unwrap();
        assert!(RingContext::from_descriptor(&bad).is_err());
    }

    #[test]
    fn element_encodings() {
        let z = Integers;
        assert_eq!(z.elem_from_json(&json!("-12")).unwrap(), BigInt::from(-12));
        assert_eq!(z.elem_from_json(&json!(7)).unwrap(), BigInt::from(7));
        let x = z.frac_from_json(&json!({"num": "3", "den": "-6"})).unwrap();
        assert_eq!(z.frac_to_json(&x), json!("-1/2"));
        let r = PolyRing::new(3).unwrap();
        let p = r.elem_from_json(&json!([1, 0, 1])).unwrap();
        assert_eq!(r.elem_to_json(&p), json!([1, 0, 1]));
        assert!(r.elem_from_json(&json!([3])).is_err());
        let l = LocalizedIntegers::new([2]).unwrap();
        assert!(l.elem_from_json(&json!("3/4")).is_ok());
        assert!(l.elem_from_json(&json!("1/3")).is_err());
    }
}
