//! Descent from rational to integral representations.
//!
//! Given `q(x') = t^2 d` and a Euclidean step `y` for `x'/t`, put
//! `a = q(y) - d`, `b = 2dt - 2 (x' . y)`, `T = a t + b`, `X = a x' + b y`.
//! Then `q(X) = T^2 d` and `T = t q(x'/t - y)`, so `|T| < |t|` and iterating
//! ends with a unit `t`, i.e. an integral representation.

pub mod audit;
pub mod search;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euclid::{euclidean_family, euclidean_step_form, StepRing};
use crate::forms::QuadraticForm;
use crate::limits::Limits;
use crate::rings::{format_rational, ElemCodec, Ring};

pub use audit::{
    integer_range, is_adc_empirical, non_adc_certificate_check, non_adc_certificate_search, AdcAudit,
    Certificate, CertificateSearch,
};
pub use search::{
    represents_integrally, witness_search, witness_search_nonintegral, Representation, SearchRing,
    WitnessSearch,
};

/// `q(xprime) = t^2 d` with `t != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<R: Ring> {
    pub t: R::Elem,
    pub xprime: Vec<R::Elem>,
    pub d: R::Elem,
}

impl<R: Ring> Witness<R> {
    /// Checked construction.
    pub fn new(q: &QuadraticForm<R>, t: R::Elem, xprime: Vec<R::Elem>, d: R::Elem) -> Result<Self> {
        let r = q.ring();
        if r.is_zero(&t) {
            return Err(Error::InvalidWitness("t must be nonzero".into()));
        }
        let lhs = q.evaluate_elems(&xprime)?;
        if lhs != r.mul(&r.mul(&t, &t), &d) {
            return Err(Error::InvalidWitness(format!(
                "q(x') = {} is not t^2 d",
                r.format_elem(&lhs)
            )));
        }
        Ok(Witness { t, xprime, d })
    }

    /// The rational point `x'/t` with `q(x'/t) = d`.
    pub fn point(&self, r: &R) -> Vec<R::Frac> {
        self.xprime
            .iter()
            .map(|x| r.ratio(x, &self.t).expect("t is nonzero"))
            .collect()
    }
}

/// One descent step with all intermediate quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord<R: Ring> {
    pub t: R::Elem,
    pub xprime: Vec<R::Elem>,
    pub y: Vec<R::Elem>,
    pub z: Vec<R::Frac>,
    pub qz: R::Frac,
    pub a: R::Elem,
    pub b: R::Elem,
    pub big_t: R::Elem,
    pub big_x: Vec<R::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<E> {
    Success(Vec<E>),
    Stalled(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTrace<R: Ring> {
    pub start: Witness<R>,
    pub steps: Vec<StepRecord<R>>,
    pub outcome: Outcome<R::Elem>,
}

fn integral<R: Ring>(r: &R, x: &R::Frac, what: &str) -> Result<R::Elem> {
    r.to_integral(x)
        .ok_or_else(|| Error::BadStep(format!("{what} is not integral")))
}

/// Apply one descent step at `y`.
pub fn descent_step<R: Ring>(
    q: &QuadraticForm<R>,
    w: &Witness<R>,
    y: &[R::Elem],
) -> Result<(Witness<R>, StepRecord<R>)> {
    let r = q.ring();
    if y.len() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got: y.len(),
        });
    }
    let point = w.point(r);
    let z: Vec<R::Frac> = point.iter().zip(y).map(|(p, yi)| r.frac_sub(p, &r.embed(yi))).collect();
    let qz = q.evaluate(&z)?;
    if r.frac_is_zero(&qz) {
        return Err(Error::BadStep("q(x'/t - y) = 0".into()));
    }
    if !r.norm_fraction(&qz).less_than_one() {
        return Err(Error::BadStep(format!(
            "|q(x'/t - y)| = {} is not below 1",
            format_rational(r.norm_fraction(&qz).value())
        )));
    }
    let yf: Vec<R::Frac> = y.iter().map(|v| r.embed(v)).collect();
    let xf: Vec<R::Frac> = w.xprime.iter().map(|v| r.embed(v)).collect();
    let a = r.sub(&q.evaluate_elems(y)?, &w.d);
    let two = r.from_i64(2);
    let two_xy = integral(r, &r.frac_mul(&r.embed(&two), &q.bilinear(&xf, &yf)?), "2 (x' . y)")?;
    let b = r.sub(&r.mul(&r.mul(&two, &w.d), &w.t), &two_xy);
    let big_t = r.add(&r.mul(&a, &w.t), &b);
    let big_x: Vec<R::Elem> = w
        .xprime
        .iter()
        .zip(y)
        .map(|(xi, yi)| r.add(&r.mul(&a, xi), &r.mul(&b, yi)))
        .collect();
    let next = Witness::new(q, big_t.clone(), big_x.clone(), w.d.clone())
        .map_err(|e| Error::BadStep(format!("descent identity failed: {e}")))?;
    let record = StepRecord {
        t: w.t.clone(),
        xprime: w.xprime.clone(),
        y: y.to_vec(),
        z,
        qz,
        a,
        b,
        big_t,
        big_x,
    };
    Ok((next, record))
}

/// Iterate Euclidean steps and descent steps until `t` is a unit.
pub fn adc_descend<R: StepRing>(
    q: &QuadraticForm<R>,
    w: &Witness<R>,
    limits: &Limits,
) -> Result<DescentTrace<R>> {
    euclidean_family(q).map_err(|e| match e {
        Error::NotImplementedFamily => Error::NotEuclideanFamily,
        other => other,
    })?;
    let r = q.ring();
    let w = Witness::new(q, w.t.clone(), w.xprime.clone(), w.d.clone())?;
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let point = cur.point(r);
        let integral_point: Option<Vec<R::Elem>> = point.iter().map(|p| r.to_integral(p)).collect();
        if let Some(y) = integral_point {
            return Ok(DescentTrace {
                start: w,
                steps,
                outcome: Outcome::Success(y),
            });
        }
        let y = match euclidean_step_form(q, &point, limits) {
            Ok(y) => y,
            Err(Error::StepFailed(why)) => {
                return Ok(DescentTrace {
                    start: w,
                    steps,
                    outcome: Outcome::Stalled(why),
                })
            }
            Err(e) => return Err(e),
        };
        let (next, record) = descent_step(q, &cur, &y)?;
        steps.push(record);
        cur = next;
    }
}

fn elems_json<R: ElemCodec>(r: &R, v: &[R::Elem]) -> Value {
    r.vec_to_json(v)
}

impl<R: ElemCodec> DescentTrace<R> {
    pub fn to_json(&self, r: &R) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "t": r.elem_to_json(&s.t),
                    "xprime": elems_json(r, &s.xprime),
                    "y": elems_json(r, &s.y),
                    "z": r.frac_vec_to_json(&s.z),
                    "q_z": r.frac_to_json(&s.qz),
                    "a": r.elem_to_json(&s.a),
                    "b": r.elem_to_json(&s.b),
                    "T": r.elem_to_json(&s.big_t),
                    "X": elems_json(r, &s.big_x),
                })
            })
            .collect();
        let outcome = match &self.outcome {
            Outcome::Success(y) => json!({"success": elems_json(r, y)}),
            Outcome::Stalled(why) => json!({"stalled": why}),
        };
        json!({
            "d": r.elem_to_json(&self.start.d),
            "witness": {"t": r.elem_to_json(&self.start.t), "xprime": elems_json(r, &self.start.xprime)},
            "steps": steps,
            "outcome": outcome,
        })
    }
}
