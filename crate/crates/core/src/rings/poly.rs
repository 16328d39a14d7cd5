//! Dense univariate polynomials over a [`FiniteField`].

use std::cmp::Ordering;

use crate::rings::field::FiniteField;

/// Coefficients low to high with no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: u32, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The base-q code `sum c_i q^i`, used as the enumeration order.
    pub fn code(&self, q: u32) -> u128 {
        self.0.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
    }

    pub fn from_code(mut code: u128, q: u32) -> Self {
        let mut v = Vec::new();
        while code > 0 {
            v.push((code % q as u128) as u32);
            code /= q as u128;
        }
        Poly(v)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

pub fn add(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.0.len().max(b.0.len());
    Poly::from_coeffs((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
}

pub fn neg(f: &FiniteField, a: &Poly) -> Poly {
    Poly(a.0.iter().map(|&c| f.neg(c)).collect())
}

pub fn sub(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.0.len().max(b.0.len());
    Poly::from_coeffs((0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
}

pub fn scale(f: &FiniteField, a: &Poly, c: u32) -> Poly {
    if c == 0 {
        return Poly::zero();
    }
    Poly(a.0.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![0u32; a.0.len() + b.0.len() - 1];
    for (i, &x) in a.0.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.0.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    Poly::from_coeffs(out)
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(f: &FiniteField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.degree().expect("polynomial division by zero");
    let inv_lead = f.inv(b.leading()).expect("nonzero leading coefficient");
    let mut r = a.0.clone();
    if r.len() <= db {
        return (Poly::zero(), a.clone());
    }
    let mut q = vec![0u32; r.len() - db];
    for deg in (db..r.len()).rev() {
        let c = f.mul(r[deg], inv_lead);
        if c == 0 {
            continue;
        }
        q[deg - db] = c;
        for (i, &bi) in b.0.iter().enumerate() {
            let t = &mut r[deg - db + i];
            *t = f.sub(*t, f.mul(c, bi));
        }
    }
    r.truncate(db);
    (Poly::from_coeffs(q), Poly::from_coeffs(r))
}

pub fn rem(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn div_exact(f: &FiniteField, a: &Poly, b: &Poly) -> Option<Poly> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = divrem(f, a, b);
    r.is_zero().then_some(q)
}

pub fn monic(f: &FiniteField, a: &Poly) -> Poly {
    match f.inv(a.leading()) {
        Some(inv) => scale(f, a, inv),
        None => Poly::zero(),
    }
}

pub fn gcd(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &FiniteField, a: &Poly) -> Poly {
    Poly::from_coeffs(
        a.0.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_i64(i as i64)))
            .collect(),
    )
}

fn mulmod(f: &FiniteField, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    rem(f, &mul(f, a, b), m)
}

fn powmod(f: &FiniteField, base: &Poly, mut e: u128, m: &Poly) -> Poly {
    let mut acc = rem(f, &Poly::constant(1), m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test: a polynomial of degree n is irreducible iff
/// gcd(t^(q^i) - t, f) = 1 for every i <= n/2.
pub fn is_irreducible(f: &FiniteField, a: &Poly) -> bool {
    let n = match a.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let t = Poly::monomial(1, 1);
    let mut power = rem(f, &t, a);
    for _ in 1..=n / 2 {
        power = powmod(f, &power, f.order() as u128, a);
        let g = gcd(f, &sub(f, &power, &t), a);
        if !g.is_constant() {
            return false;
        }
    }
    true
}

/// Squarefree test through gcd with the formal derivative. Over a perfect
/// field a vanishing derivative means the polynomial is a p-th power.
pub fn is_squarefree(f: &FiniteField, a: &Poly) -> bool {
    debug_assert!(!a.is_zero());
    if a.is_constant() {
        return true;
    }
    let d = derivative(f, a);
    if d.is_zero() {
        return false;
    }
    gcd(f, a, &d).is_constant()
}

/// Exact square root if `a` is the square of a polynomial; the returned root
/// has the smaller leading coefficient code of the two candidates.
pub fn sqrt(f: &FiniteField, a: &Poly) -> Option<Poly> {
    let deg = match a.degree() {
        None => return Some(Poly::zero()),
        Some(d) => d,
    };
    if deg % 2 == 1 {
        return None;
    }
    let m = deg / 2;
    let lead = f.sqrt(a.leading())?;
    let two_lead_inv = f.inv(f.add(lead, lead))?;
    // Determine root coefficients from the top: the coefficient of t^(m+k) in
    // root^2 involves r_m^2 ... and is linear in r_(m-k) with factor 2 r_m.
    let mut root = vec![0u32; m + 1];
    root[m] = lead;
    for k in 1..=m {
        let target = a.coeff(2 * m - k);
        let mut acc = 0u32;
        for i in (m - k + 1)..=m {
            let j = 2 * m - k - i;
            if j > m || j < m - k + 1 {
                continue;
            }
            acc = f.add(acc, f.mul(root[i], root[j]));
        }
        root[m - k] = f.mul(f.sub(target, acc), two_lead_inv);
    }
    let r = Poly::from_coeffs(root);
    (mul(f, &r, &r) == *a).then_some(r)
}

/// Every polynomial of degree at most `max_deg` in increasing [`Poly::code`] order.
pub fn all_up_to_degree(q: u32, max_deg: usize) -> impl Iterator<Item = Poly> {
    let count = (q as u128).pow(max_deg as u32 + 1);
    (0..count).map(move |c| Poly::from_code(c, q))
}

/// Monic polynomials of exact degree `deg` in increasing code order.
pub fn monic_of_degree(q: u32, deg: usize) -> impl Iterator<Item = Poly> {
    let count = (q as u128).pow(deg as u32);
    let top = (q as u128).pow(deg as u32);
    (0..count).map(move |c| Poly::from_code(top + c, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3).unwrap()
    }

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn division_identity() {
        let f = f3();
        for a in all_up_to_degree(3, 3) {
            for b in all_up_to_degree(3, 2).skip(1) {
                let (q, r) = divrem(&f, &a, &b);
                assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
                assert!(r.degree() < b.degree());
            }
        }
    }

    #[test]
    fn irreducibility_small_cases() {
        let f = f3();
        // t^2 + 1 is irreducible over F_3, t^2 - 1 is not
        assert!(is_irreducible(&f, &p(&[1, 0, 1])));
        assert!(!is_irreducible(&f, &p(&[2, 0, 1])));
        assert!(is_irreducible(&f, &p(&[0, 1])));
        // brute force: irreducible iff no monic factor of degree <= n/2
        for a in monic_of_degree(3, 4) {
            let has_factor = (1..=2).any(|d| {
                monic_of_degree(3, d).any(|g| rem(&f, &a, &g).is_zero())
            });
            assert_eq!(is_irreducible(&f, &a), !has_factor, "{a:?}");
        }
    }

    #[test]
    fn squarefree_via_derivative() {
        let f = f3();
        assert!(is_squarefree(&f, &p(&[0, 1, 1]))); // t^2 + t
        assert!(!is_squarefree(&f, &p(&[0, 0, 1, 1]))); // t^2 (t + 1)
        assert!(!is_squarefree(&f, &p(&[1, 0, 0, 1]))); // t^3 + 1 = (t + 1)^3
    }

    #[test]
    fn sqrt_recovers_squares() {
        let f = FiniteField::new(9).unwrap();
        for a in all_up_to_degree(9, 2).skip(1).step_by(7) {
            let sq = mul(&f, &a, &a);
            let r = sqrt(&f, &sq).unwrap();
            assert_eq!(mul(&f, &r, &r), sq);
        }
        let f = f3();
        assert_eq!(sqrt(&f, &p(&[1, 0, 1])), None);
        assert_eq!(sqrt(&f, &p(&[2])), None);
    }
}
