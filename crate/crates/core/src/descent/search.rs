//! Bounded searches for witnesses and for integral representations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Witness;
use crate::error::{Error, Result};
use crate::euclid::StepRing;
use crate::forms::predicates::as_integer_form;
use crate::forms::{is_definite_diagonal, is_positive_definite, lattice, QuadraticForm};
use crate::limits::{Budget, Limits};
use crate::rings::{poly, ElemCodec, Integers, LocalizedIntegers, Poly, PolyRing, Ring};

/// Rings with a solution enumerator for `q(x) = target`.
pub trait SearchRing: StepRing + ElemCodec {
    /// Normalized nonzero elements of norm up to the bound (absolute value
    /// for the integers, degree for F_q[t]), by increasing norm.
    fn t_candidates(&self, t_bound: u32) -> Vec<Self::Elem>;

    /// Visit solutions of `q(x) = target` within `bound` in a fixed order
    /// until `visit` returns `true`. Returns whether every solution was
    /// eligible, so that an empty visit proves none exists.
    fn solutions(
        q: &QuadraticForm<Self>,
        target: &Self::Elem,
        bound: u32,
        budget: &Budget,
        visit: &mut dyn FnMut(&[Self::Elem]) -> bool,
    ) -> Result<bool>;

    /// Coordinate bound used when looking for `q(x') = t^2 d`.
    fn witness_bound(q: &QuadraticForm<Self>, t: &Self::Elem, d: &Self::Elem, t_bound: u32) -> u32;
}

/// Enumerate `x` with entries of `x[..n-1]` from the pools, solving the
/// quadratic equation for the last coordinate. Stops when `visit` says so;
/// returns `true` in that case.
fn box_solutions<R: Ring>(
    q: &QuadraticForm<R>,
    target: &R::Elem,
    pools: &[Vec<R::Elem>],
    last_ok: &dyn Fn(&R::Elem) -> bool,
    budget: &Budget,
    visit: &mut dyn FnMut(&[R::Elem]) -> bool,
) -> Result<bool> {
    let r = q.ring();
    let n = q.dim();
    let last = n - 1;
    if pools[..last].iter().any(|p| p.is_empty()) {
        return Ok(false);
    }
    let a = q.coeff(last, last).clone();
    let two = r.from_i64(2);
    let two_a = r.mul(&two, &a);
    let mut idx = vec![0usize; last];
    let mut x: Vec<R::Elem> = vec![r.zero(); n];
    loop {
        budget.charge(1)?;
        for (k, &i) in idx.iter().enumerate() {
            x[k] = pools[k][i].clone();
        }
        x[last] = r.zero();
        let c = r.sub(&q.evaluate_elems(&x)?, target);
        let l = (0..last).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(q.coeff(i, last), &x[i])));
        let mut cands: Vec<R::Elem> = Vec::new();
        if r.is_zero(&a) {
            if !r.is_zero(&l) {
                cands.extend(r.div_exact(&r.neg(&c), &l));
            } else if r.is_zero(&c) {
                cands.extend(pools[last].iter().cloned());
            }
        } else if r.is_zero(&two_a) {
            // characteristic 2: no quadratic formula
            cands.extend(pools[last].iter().cloned());
        } else {
            let disc = r.sub(&r.mul(&l, &l), &r.mul(&r.from_i64(4), &r.mul(&a, &c)));
            if let Some(s) = r.sqrt_exact(&disc) {
                let neg_l = r.neg(&l);
                for root in [r.sub(&neg_l, &s), r.add(&neg_l, &s)] {
                    cands.extend(r.div_exact(&root, &two_a));
                }
            }
        }
        let mut seen: Vec<R::Elem> = Vec::new();
        for v in cands {
            if !last_ok(&v) || seen.contains(&v) {
                continue;
            }
            x[last] = v.clone();
            seen.push(v);
            if q.evaluate_elems(&x)? == *target && visit(&x) {
                return Ok(true);
            }
        }
        // advance the odometer, last free coordinate fastest
        let mut k = last;
        loop {
            if k == 0 {
                return Ok(false);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pools[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn negated(q: &QuadraticForm<Integers>) -> QuadraticForm<Integers> {
    let terms = q.terms().into_iter().map(|(i, j, c)| (i, j, -c)).collect();
    QuadraticForm::new(Integers, q.dim(), terms).expect("negation keeps nondegeneracy")
}

fn integer_solutions(
    q: &QuadraticForm<Integers>,
    target: &BigInt,
    bound: u32,
    budget: &Budget,
    visit: &mut dyn FnMut(&[BigInt]) -> bool,
) -> Result<bool> {
    let (form, target) = if is_positive_definite(q) {
        (q.clone(), target.clone())
    } else {
        let neg = negated(q);
        if is_positive_definite(&neg) {
            (neg, -target)
        } else {
            let b = bound as i64;
            let pool: Vec<BigInt> = (-b..=b).map(BigInt::from).collect();
            let pools = vec![pool; q.dim()];
            let lim = BigInt::from(b);
            box_solutions(q, target, &pools, &|v: &BigInt| v.abs() <= lim, budget, visit)?;
            return Ok(false);
        }
    };
    if target.is_negative() {
        return Ok(true);
    }
    if target.is_zero() {
        visit(&vec![BigInt::zero(); q.dim()]);
        return Ok(true);
    }
    let g = lattice::gram_i128(&form)?;
    let e = lattice::Ellipsoid::new(&g, &vec![0; form.dim()], 0)?;
    let t2 = lattice::to_i128(&target)?.checked_mul(2).ok_or(Error::Overflow)?;
    let mut buf: Vec<BigInt> = Vec::with_capacity(form.dim());
    e.enumerate(t2, Some(t2), budget, |y, _| {
        buf.clear();
        buf.extend(y.iter().map(|&v| BigInt::from(v)));
        if visit(&buf) {
            lattice::Visit::Stop
        } else {
            lattice::Visit::Continue
        }
    })?;
    Ok(true)
}

impl SearchRing for Integers {
    fn t_candidates(&self, t_bound: u32) -> Vec<BigInt> {
        (1..=t_bound as i64).map(BigInt::from).collect()
    }

    /// Positive or negative definite forms are searched exactly over the
    /// whole ellipsoid; other forms over the box `|x_i| <= bound`.
    fn solutions(
        q: &QuadraticForm<Self>,
        target: &BigInt,
        bound: u32,
        budget: &Budget,
        visit: &mut dyn FnMut(&[BigInt]) -> bool,
    ) -> Result<bool> {
        integer_solutions(q, target, bound, budget, visit)
    }

    fn witness_bound(_q: &QuadraticForm<Self>, _t: &BigInt, _d: &BigInt, t_bound: u32) -> u32 {
        t_bound
    }
}

impl SearchRing for PolyRing {
    fn t_candidates(&self, t_bound: u32) -> Vec<Poly> {
        (0..=t_bound as usize)
            .flat_map(|deg| poly::monic_of_degree(self.q(), deg))
            .collect()
    }

    /// For diagonal forms anisotropic at infinity the degree of `q(x)` is
    /// `max(deg a_i + 2 deg x_i)`, which bounds every solution; otherwise
    /// coordinates have degree at most `bound`.
    fn solutions(
        q: &QuadraticForm<Self>,
        target: &Poly,
        bound: u32,
        budget: &Budget,
        visit: &mut dyn FnMut(&[Poly]) -> bool,
    ) -> Result<bool> {
        let r = q.ring();
        let n = q.dim();
        let definite = is_definite_diagonal(q) == Some(true);
        let degs: Vec<Option<usize>> = if definite {
            let dt = target.degree();
            (0..n)
                .map(|i| {
                    let da = q.coeff(i, i).degree().expect("nonzero diagonal");
                    match dt {
                        Some(dt) if dt >= da => Some((dt - da) / 2),
                        _ => None,
                    }
                })
                .collect()
        } else {
            vec![Some(bound as usize); n]
        };
        let pools: Vec<Vec<Poly>> = degs
            .iter()
            .map(|d| match d {
                Some(d) => poly::all_up_to_degree(r.q(), *d).collect(),
                None => vec![Poly::zero()],
            })
            .collect();
        let cap = degs[n - 1];
        let last_ok = move |v: &Poly| match (v.degree(), cap) {
            (None, _) => true,
            (Some(dv), Some(c)) => dv <= c,
            (Some(_), None) => false,
        };
        box_solutions(q, target, &pools, &last_ok, budget, visit)?;
        Ok(definite)
    }

    fn witness_bound(_q: &QuadraticForm<Self>, t: &Poly, d: &Poly, _t_bound: u32) -> u32 {
        let dt = t.degree().unwrap_or(0);
        let dd = d.degree().unwrap_or(0);
        (dt + dd.div_ceil(2)) as u32
    }
}

fn s_products(r: &LocalizedIntegers, bound: u32) -> Vec<BigUint> {
    let bound = BigUint::from(bound.max(1));
    let mut out = vec![BigUint::one()];
    for p in r.primes() {
        let mut next = Vec::new();
        for s in &out {
            let mut v = s.clone();
            while v <= bound {
                next.push(v.clone());
                v *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

impl SearchRing for LocalizedIntegers {
    fn t_candidates(&self, t_bound: u32) -> Vec<BigRational> {
        (1..=t_bound as i64)
            .map(|k| BigRational::from_integer(k.into()))
            .filter(|k| self.is_normalized(k))
            .collect()
    }

    /// Solutions `x / s` with `s` an S-product up to `bound` and `x` an
    /// integer solution of the scaled equation. Integer coefficients only.
    fn solutions(
        q: &QuadraticForm<Self>,
        target: &BigRational,
        bound: u32,
        budget: &Budget,
        visit: &mut dyn FnMut(&[BigRational]) -> bool,
    ) -> Result<bool> {
        let z = as_integer_form(q).ok_or(Error::NotImplementedFamily)?;
        for s in s_products(q.ring(), bound) {
            let s = BigInt::from(s);
            let scaled = target * BigRational::from_integer(&s * &s);
            if !scaled.is_integer() {
                continue;
            }
            let mut stop = false;
            integer_solutions(&z, &scaled.to_integer(), bound, budget, &mut |x| {
                let y: Vec<BigRational> = x.iter().map(|v| BigRational::new(v.clone(), s.clone())).collect();
                stop = visit(&y);
                stop
            })?;
            if stop {
                break;
            }
        }
        Ok(false)
    }

    fn witness_bound(_q: &QuadraticForm<Self>, _t: &BigRational, _d: &BigRational, t_bound: u32) -> u32 {
        t_bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch<R: Ring> {
    Found(Witness<R>),
    NotFoundUpTo(u32),
}

fn search_witness<R: SearchRing>(
    q: &QuadraticForm<R>,
    d: &R::Elem,
    t_bound: u32,
    limits: &Limits,
    nonintegral: bool,
) -> Result<WitnessSearch<R>> {
    let r = q.ring();
    if r.is_zero(d) {
        return Err(Error::ZeroTarget);
    }
    let budget = limits.budget();
    for t in r.t_candidates(t_bound) {
        if nonintegral && r.is_unit(&t) {
            continue;
        }
        let target = r.mul(&r.mul(&t, &t), d);
        let bound = R::witness_bound(q, &t, d, t_bound);
        let mut found: Option<Vec<R::Elem>> = None;
        R::solutions(q, &target, bound, &budget, &mut |x| {
            if nonintegral && x.iter().all(|xi| r.div_exact(xi, &t).is_some()) {
                return false;
            }
            found = Some(x.to_vec());
            true
        })?;
        if let Some(x) = found {
            return Ok(WitnessSearch::Found(Witness::new(q, t, x, d.clone())?));
        }
    }
    Ok(WitnessSearch::NotFoundUpTo(t_bound))
}

/// The first witness `q(x') = t^2 d` by increasing norm of `t`, then in the
/// solution order of [`SearchRing::solutions`].
pub fn witness_search<R: SearchRing>(
    q: &QuadraticForm<R>,
    d: &R::Elem,
    t_bound: u32,
    limits: &Limits,
) -> Result<WitnessSearch<R>> {
    search_witness(q, d, t_bound, limits, false)
}

/// Like [`witness_search`] but only accepts witnesses with `x'/t` not
/// integral, so that descent has work to do.
pub fn witness_search_nonintegral<R: SearchRing>(
    q: &QuadraticForm<R>,
    d: &R::Elem,
    t_bound: u32,
    limits: &Limits,
) -> Result<WitnessSearch<R>> {
    search_witness(q, d, t_bound, limits, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation<E> {
    Yes(Vec<E>),
    No,
    NoUpTo(u32),
}

/// Whether `d = q(x)` for some integral `x`.
pub fn represents_integrally<R: SearchRing>(
    q: &QuadraticForm<R>,
    d: &R::Elem,
    box_bound: u32,
    limits: &Limits,
) -> Result<Representation<R::Elem>> {
    let mut found = None;
    let exhaustive = R::solutions(q, d, box_bound, &limits.budget(), &mut |x| {
        found = Some(x.to_vec());
        true
    })?;
    Ok(match found {
        Some(x) => Representation::Yes(x),
        None if exhaustive => Representation::No,
        None => Representation::NoUpTo(box_bound),
    })
}
