//! Structural predicates: isotropy, definiteness, maximality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{determinant, QuadraticForm};
use crate::limits::Limits;
use crate::rings::{factor, Integers, Poly, PolyRing, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isotropy<E> {
    Isotropic(Vec<E>),
    /// Proven anisotropic (definite integer forms).
    Anisotropic,
    NoWitnessUpTo(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Maximality {
    Maximal,
    NotMaximal,
    Unknown,
}

impl std::fmt::Display for Maximality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Maximality::Maximal => "maximal",
            Maximality::NotMaximal => "not maximal",
            Maximality::Unknown => "unknown",
        })
    }
}

/// The form over `Integers` with the same coefficients, when they are all
/// ordinary integers.
pub(crate) fn as_integer_form<R: Ring>(q: &QuadraticForm<R>) -> Option<QuadraticForm<Integers>> {
    let entries = q
        .terms()
        .into_iter()
        .map(|(i, j, c)| q.ring().as_integer(&c).map(|c| (i, j, c)))
        .collect::<Option<Vec<_>>>()?;
    QuadraticForm::new(Integers, q.dim(), entries).ok()
}

/// Odometer over all vectors with entries from `pool`, skipping zero and
/// vectors whose first nonzero entry is not normalized.
fn search_pool<E: Clone, F>(
    pool: &[E],
    dim: usize,
    limits: &Limits,
    is_zero: impl Fn(&E) -> bool,
    normalized: impl Fn(&E) -> bool,
    mut accept: F,
) -> Result<Option<Vec<E>>>
where
    F: FnMut(&[E]) -> bool,
{
    if pool.is_empty() {
        return Ok(None);
    }
    let budget = limits.budget();
    let mut idx = vec![0usize; dim];
    loop {
        // advance
        let mut k = dim;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
        }
        let v: Vec<E> = idx.iter().map(|&i| pool[i].clone()).collect();
        let lead = v.iter().find(|e| !is_zero(e));
        match lead {
            Some(e) if normalized(e) => {}
            _ => continue,
        }
        budget.charge(1)?;
        if accept(&v) {
            return Ok(Some(v));
        }
    }
}

/// Look for a nonzero `a` with `q(a) = 0` among vectors of height (integers)
/// or degree (polynomials) at most `height_bound`.
pub fn is_isotropic_bounded<R: Ring>(
    q: &QuadraticForm<R>,
    height_bound: u32,
    limits: &Limits,
) -> Result<Isotropy<R::Elem>> {
    if height_bound < 1 {
        return Err(Error::BoundTooSmall);
    }
    if let Some(z) = as_integer_form(q) {
        let neg = QuadraticForm::new(
            Integers,
            z.dim(),
            z.terms().into_iter().map(|(i, j, c)| (i, j, -c)).collect(),
        )?;
        if is_positive_definite(&z) || is_positive_definite(&neg) {
            return Ok(Isotropy::Anisotropic);
        }
    }
    let r = q.ring();
    let pool = r.small_elements(height_bound);
    let found = search_pool(
        &pool,
        q.dim(),
        limits,
        |e| r.is_zero(e),
        |e| r.is_normalized(e),
        |v| q.evaluate_elems(v).map(|x| r.is_zero(&x)).unwrap_or(false),
    )?;
    Ok(match found {
        Some(v) => Isotropy::Isotropic(v),
        None => Isotropy::NoWitnessUpTo(height_bound),
    })
}

/// Leading principal minors of the half-integral Gram matrix are all positive.
pub fn is_positive_definite(q: &QuadraticForm<Integers>) -> bool {
    let b = q.gram_half();
    (1..=q.dim()).all(|k| {
        let minor: Vec<Vec<BigRational>> = b[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&Integers, minor).is_positive()
    })
}

/// Anisotropy over F_q(t) of a form with constant coefficients, decided by
/// exhausting F_q^n.
pub fn anisotropic_constant_reduction(q: &QuadraticForm<PolyRing>) -> Result<bool> {
    anisotropic_constant_reduction_with(q, &Limits::default())
}

pub fn anisotropic_constant_reduction_with(
    q: &QuadraticForm<PolyRing>,
    limits: &Limits,
) -> Result<bool> {
    let r = q.ring();
    if q.terms().iter().any(|(_, _, c)| !c.is_constant()) {
        return Err(Error::NonConstantCoefficients);
    }
    let pool: Vec<Poly> = r.field().elements().map(Poly::constant).collect();
    let found = search_pool(
        &pool,
        q.dim(),
        limits,
        |e| e.is_zero(),
        |e| e.leading() == 1,
        |v| q.evaluate_elems(v).map(|x| x.is_zero()).unwrap_or(false),
    )?;
    Ok(found.is_none())
}

/// Degree of the discriminant; the power of two in it is a unit.
pub fn discriminant_degree(q: &QuadraticForm<PolyRing>) -> usize {
    let d = q.discriminant();
    d.numerator().degree().expect("nondegenerate form") - d.denominator().degree().unwrap_or(0)
}

/// Anisotropy at the infinite place of F_q(t), for diagonal forms.
///
/// Over F_q((1/t)) each coefficient is, up to squares, `c` or `c/t` with `c`
/// its leading coefficient, according to the parity of its degree. The form
/// splits as `f0 + (1/t) f1` with `f0`, `f1` over F_q, and it is anisotropic
/// exactly when both residue forms are. Returns `None` for non-diagonal forms.
pub fn is_definite_diagonal(q: &QuadraticForm<PolyRing>) -> Option<bool> {
    let diag = q.diagonal_coeffs()?;
    let field = q.ring().field();
    let mut groups: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for c in &diag {
        let deg = c.degree().expect("nondegenerate diagonal");
        groups[deg % 2].push(c.leading());
    }
    let residue_anisotropic = |g: &[u32]| match g.len() {
        0 | 1 => true,
        2 => !field.is_square(field.neg(field.mul(g[0], g[1]))),
        _ => false,
    };
    Some(groups.iter().all(|g| residue_anisotropic(g)))
}

fn modp(a: &BigInt, p: &BigInt) -> BigInt {
    a.mod_floor(p)
}

fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    // p prime, a not divisible by p
    let e = p - BigInt::from(2);
    a.modpow(&e, p)
}

/// Basis of the kernel of `m` over F_p.
fn kernel_mod_p(m: &[Vec<BigInt>], p: &BigInt) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|x| modp(x, p)).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = inv_mod(&a[row][col], p);
        for c in 0..n {
            a[row][c] = modp(&(&a[row][c] * &inv), p);
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &a[r][c] - &f * &a[row][c];
                    a[r][c] = modp(&t, p);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigInt::zero(); n];
            v[fc] = BigInt::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = modp(&-&a[r][fc], p);
            }
            v
        })
        .collect()
}

/// Search for an integral overlattice of Z^n containing Z^n with prime index.
///
/// Any proper overlattice on which `q` stays integral contains one of prime
/// index `p`, generated over Z^n by some `u/p` with `G u = 0 (mod p)` and
/// `q(u) = 0 (mod p^2)`, where `G` is the doubled Gram matrix. Such `p` divide
/// `det G`. Returns the vector `u/p` of an overlattice, or `None` when Z^n is
/// maximal.
pub fn maximal_by_overlattice_search(
    q: &QuadraticForm<Integers>,
    limits: &Limits,
) -> Result<Option<Vec<BigRational>>> {
    let g = q.doubled_gram();
    let det = determinant(
        &Integers,
        g.iter()
            .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect(),
    )
    .to_integer();
    let budget = limits.budget();
    for (p, _) in factor::factor(det.magnitude()) {
        let p = BigInt::from(p);
        let p2 = &p * &p;
        let basis = kernel_mod_p(&g, &p);
        let r = basis.len();
        if r == 0 {
            continue;
        }
        // projective enumeration of the kernel: first nonzero coefficient 1
        for lead in 0..r {
            let rest = r - lead - 1;
            let count = num_traits::pow(p.clone(), rest);
            let count_u64: u64 = count.clone().try_into().unwrap_or(u64::MAX);
            budget.charge(count_u64)?;
            let mut k = BigInt::zero();
            while k < count {
                let mut coeffs = vec![BigInt::zero(); r];
                coeffs[lead] = BigInt::one();
                let mut rem = k.clone();
                for c in coeffs.iter_mut().skip(lead + 1) {
                    let (qq, rr) = rem.div_rem(&p);
                    *c = rr;
                    rem = qq;
                }
                let u: Vec<BigInt> = (0..q.dim())
                    .map(|i| {
                        let s: BigInt = coeffs.iter().zip(&basis).map(|(c, b)| c * &b[i]).sum();
                        modp(&s, &p)
                    })
                    .collect();
                let value = q.evaluate_elems(&u)?;
                if modp(&value, &p2).is_zero() {
                    return Ok(Some(
                        u.into_iter().map(|x| BigRational::new(x, p.clone())).collect(),
                    ));
                }
                k += 1;
            }
        }
    }
    Ok(None)
}

fn is_sum_of_squares(q: &QuadraticForm<Integers>) -> bool {
    q.diagonal_coeffs()
        .map(|d| d.iter().all(|a| a.is_one()))
        .unwrap_or(false)
}

/// Maximality of Z^n for `q`, using the closed-form criteria for `a x^2`,
/// `x^2 + a y^2` and sums of squares, and the overlattice search otherwise.
pub fn maximality_special_z(q: &QuadraticForm<Integers>, limits: &Limits) -> Maximality {
    let c = |i: usize, j: usize| q.coeff(i, j).clone();
    let verdict = |b: bool| if b { Maximality::Maximal } else { Maximality::NotMaximal };
    if q.dim() == 1 {
        return verdict(factor::is_squarefree(c(0, 0).magnitude()));
    }
    if is_sum_of_squares(q) {
        return verdict(q.dim() <= 3);
    }
    if q.dim() == 2 && c(0, 0).is_one() && c(0, 1).is_zero() {
        let a = c(1, 1);
        let r = a.mod_floor(&BigInt::from(4));
        let ok = factor::is_squarefree(a.magnitude())
            && (r == BigInt::from(1) || r == BigInt::from(2));
        return verdict(ok);
    }
    match maximal_by_overlattice_search(q, limits) {
        Ok(None) => Maximality::Maximal,
        Ok(Some(_)) => Maximality::NotMaximal,
        Err(_) => Maximality::Unknown,
    }
}

/// Primes dividing the numerator of the discriminant.
pub(crate) fn discriminant_valuation(q: &QuadraticForm<Integers>, p: &BigUint) -> u32 {
    let d = q.discriminant();
    factor::multiplicity(d.numer().magnitude(), p)
}
