//! Exact enumeration of integer points in ellipsoids.
//!
//! For `F(y) = y^T M y + 2 l^T y + c` with `M` positive definite, repeated
//! completion of squares in fraction-free form gives, at level `j` with
//! pivot `m_j` and previous pivot `m_{j-1}`,
//!
//! ```text
//! m_j F_j = s_j^2 + m_{j-1} F_{j+1},    s_j = m_j y_k + (row_j . deeper y) + lin_j
//! ```
//!
//! where every `F_j` is an integer-valued quadratic in the variables not yet
//! fixed. `F <= R` forces `F_{j+1} <= m_j R`, so each coordinate range is an
//! exact integer square root. All arithmetic is `i128` with overflow checks.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::limits::Budget;
use crate::rings::Integers;

#[derive(Debug, Clone)]
struct Level {
    var: usize,
    pivot: i128,
    prev: i128,
    // coefficients of the variables fixed before this one
    row: Vec<(usize, i128)>,
    lin: i128,
}

/// What to do after visiting a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
    /// Continue with a smaller bound on `F`.
    Shrink(i128),
}

#[derive(Debug, Clone)]
pub struct Ellipsoid {
    n: usize,
    // levels[0] is the innermost loop (last variable)
    levels: Vec<Level>,
    constant: i128,
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

fn isqrt(a: i128) -> i128 {
    if a <= 0 {
        return 0;
    }
    let r = (a as u128).sqrt() as i128;
    debug_assert!(r * r <= a && (r + 1) * (r + 1) > a);
    r
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

pub(crate) fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

impl Ellipsoid {
    /// `m` symmetric positive definite; `Err(NotPositiveDefinite)` otherwise.
    pub fn new(m: &[Vec<i128>], l: &[i128], c: i128) -> Result<Self> {
        let n = m.len();
        // augmented matrix with the linear part in row/column n
        let mut a = vec![vec![0i128; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = m[i][j];
            }
            a[i][n] = l[i];
            a[n][i] = l[i];
        }
        a[n][n] = c;
        let mut levels = Vec::with_capacity(n);
        let mut prev = 1i128;
        for var in (0..n).rev() {
            let pivot = a[var][var];
            if pivot <= 0 {
                return Err(Error::NotPositiveDefinite);
            }
            levels.push(Level {
                var,
                pivot,
                prev,
                row: (0..var).map(|i| (i, a[var][i])).collect(),
                lin: a[var][n],
            });
            let keep: Vec<usize> = (0..var).chain(std::iter::once(n)).collect();
            for &i in &keep {
                for &j in &keep {
                    let v = sub(mul(pivot, a[i][j])?, mul(a[i][var], a[var][j])?)?;
                    debug_assert_eq!(v % prev, 0);
                    a[i][j] = v / prev;
                }
            }
            prev = pivot;
        }
        Ok(Ellipsoid {
            n,
            levels,
            constant: a[n][n],
        })
    }

    /// `F(y) = (c - D y)^T G (c - D y)` for integer `c` and `D >= 1`.
    pub fn shifted(g: &[Vec<i128>], c: &[i128], d: i128) -> Result<Self> {
        let n = g.len();
        let d2 = mul(d, d)?;
        let mut m = vec![vec![0; n]; n];
        let mut l = vec![0; n];
        let mut c0 = 0i128;
        for i in 0..n {
            let mut gc = 0i128;
            for j in 0..n {
                m[i][j] = mul(d2, g[i][j])?;
                gc = add(gc, mul(g[i][j], c[j])?)?;
            }
            l[i] = -mul(d, gc)?;
            c0 = add(c0, mul(c[i], gc)?)?;
        }
        Self::new(&m, &l, c0)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Visit every `y` with `F(y) <= bound` in lexicographic order; with
    /// `target = Some(T)` only those with `F(y) = T` (and `bound` is `T`).
    pub fn enumerate<V>(
        &self,
        bound: i128,
        target: Option<i128>,
        budget: &Budget,
        mut visit: V,
    ) -> Result<()>
    where
        V: FnMut(&[i128], i128) -> Visit,
    {
        if self.n == 0 {
            return Ok(());
        }
        let mut y = vec![0i128; self.n];
        let mut bound = bound;
        self.descend(self.n - 1, self.constant, &mut y, &mut bound, target, budget, &mut visit)?;
        Ok(())
    }

    /// Returns `false` once the visitor asked to stop.
    #[allow(clippy::too_many_arguments)]
    fn descend<V>(
        &self,
        j: usize,
        deeper: i128,
        y: &mut [i128],
        bound: &mut i128,
        target: Option<i128>,
        budget: &Budget,
        visit: &mut V,
    ) -> Result<bool>
    where
        V: FnMut(&[i128], i128) -> Visit,
    {
        let lv = &self.levels[j];
        let mut t = lv.lin;
        for &(i, a) in &lv.row {
            t = add(t, mul(a, y[i])?)?;
        }
        let pd = mul(lv.prev, deeper)?;
        // the bound on F_j is m_{j-1} R
        let cap = mul(lv.pivot, mul(lv.prev, *bound)?)?;
        let rhs = sub(cap, pd)?;
        if rhs < 0 {
            return Ok(true);
        }
        budget.charge(1)?;
        if j == 0 {
            if let Some(tgt) = target {
                let need = sub(mul(lv.pivot, tgt)?, pd)?;
                if need < 0 {
                    return Ok(true);
                }
                let r = isqrt(need);
                if r * r != need {
                    return Ok(true);
                }
                let mut cands: Vec<i128> = [-r, r]
                    .into_iter()
                    .filter(|s| (s - t) % lv.pivot == 0)
                    .map(|s| (s - t) / lv.pivot)
                    .collect();
                cands.sort();
                cands.dedup();
                for v in cands {
                    y[lv.var] = v;
                    match visit(y, tgt) {
                        Visit::Stop => return Ok(false),
                        Visit::Shrink(b) => *bound = b,
                        Visit::Continue => {}
                    }
                }
                return Ok(true);
            }
        }
        let r = isqrt(rhs);
        let lo = div_ceil(-r - t, lv.pivot);
        let hi = div_floor(r - t, lv.pivot);
        let mut v = lo;
        while v <= hi {
            let s = add(mul(lv.pivot, v)?, t)?;
            let s2 = mul(s, s)?;
            // recheck against the current bound, which may have shrunk
            let cap = mul(lv.pivot, mul(lv.prev, *bound)?)?;
            if add(s2, pd)? <= cap {
                let fj = add(s2, pd)? / lv.pivot;
                y[lv.var] = v;
                if j == 0 {
                    match visit(y, fj) {
                        Visit::Stop => return Ok(false),
                        Visit::Shrink(b) => *bound = b,
                        Visit::Continue => {}
                    }
                } else if !self.descend(j - 1, fj, y, bound, target, budget, visit)? {
                    return Ok(false);
                }
            }
            v += 1;
        }
        y[lv.var] = 0;
        Ok(true)
    }
}

/// Doubled Gram matrix of an integer form as `i128`.
pub fn gram_i128(q: &QuadraticForm<Integers>) -> Result<Vec<Vec<i128>>> {
    q.doubled_gram()
        .iter()
        .map(|row| row.iter().map(to_i128).collect())
        .collect()
}

/// The first `x` in lexicographic order with `q(x) = d`, for positive
/// definite `q`. The search covers the whole ellipsoid `q(x) <= d`, so
/// `None` means `d` is not represented.
pub fn first_representation(
    q: &QuadraticForm<Integers>,
    d: &BigInt,
    budget: &Budget,
) -> Result<Option<Vec<BigInt>>> {
    if d.is_negative() {
        return Ok(None);
    }
    if d.is_zero() {
        return Ok(Some(vec![BigInt::zero(); q.dim()]));
    }
    let g = gram_i128(q)?;
    let e = Ellipsoid::new(&g, &vec![0; q.dim()], 0)?;
    let target = mul(2, to_i128(d)?)?;
    let mut found = None;
    e.enumerate(target, Some(target), budget, |y, _| {
        found = Some(y.iter().map(|&v| BigInt::from(v)).collect());
        Visit::Stop
    })?;
    Ok(found)
}

/// Number of `x` with `q(x) = d`.
pub fn count_representations(q: &QuadraticForm<Integers>, d: &BigInt, budget: &Budget) -> Result<u64> {
    if d.is_negative() {
        return Ok(0);
    }
    if d.is_zero() {
        return Ok(1);
    }
    let g = gram_i128(q)?;
    let e = Ellipsoid::new(&g, &vec![0; q.dim()], 0)?;
    let target = mul(2, to_i128(d)?)?;
    let mut count = 0;
    e.enumerate(target, Some(target), budget, |_, _| {
        count += 1;
        Visit::Continue
    })?;
    Ok(count)
}

/// `min_y q(x - y)` over integer `y`, with the first minimizer found.
pub fn closest_value(
    q: &QuadraticForm<Integers>,
    x: &[BigRational],
    budget: &Budget,
) -> Result<(BigRational, Vec<BigInt>)> {
    let n = q.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let d = x
        .iter()
        .fold(BigInt::from(1), |acc, xi| num_integer::Integer::lcm(&acc, xi.denom()));
    let c: Vec<BigInt> = x.iter().map(|xi| (xi * BigRational::from_integer(d.clone())).to_integer()).collect();
    match closest_value_i128(q, x, &d, &c, budget) {
        Err(Error::Overflow) => closest_value_rational(q, x, budget),
        other => other,
    }
}

fn closest_value_i128(
    q: &QuadraticForm<Integers>,
    x: &[BigRational],
    d: &BigInt,
    c: &[BigInt],
    budget: &Budget,
) -> Result<(BigRational, Vec<BigInt>)> {
    let d128 = to_i128(d)?;
    let c128: Vec<i128> = c.iter().map(to_i128).collect::<Result<_>>()?;
    let g = gram_i128(q)?;
    let e = Ellipsoid::shifted(&g, &c128, d128)?;
    // rounding gives an initial bound
    let y0: Vec<i128> = x
        .iter()
        .map(|xi| to_i128(&crate::rings::integers::round_half_toward_zero(xi)))
        .collect::<Result<_>>()?;
    let f0 = eval_shifted(&g, &c128, d128, &y0)?;
    let mut best = (f0, y0);
    e.enumerate(f0, None, budget, |y, f| {
        if f < best.0 {
            best = (f, y.to_vec());
            Visit::Shrink(f)
        } else {
            Visit::Continue
        }
    })?;
    let denom = BigInt::from(2) * d * d;
    Ok((
        BigRational::new(BigInt::from(best.0), denom),
        best.1.into_iter().map(BigInt::from).collect(),
    ))
}

/// Same search in exact rationals, for inputs whose denominators are too
/// large for the fraction-free `i128` recursion.
fn closest_value_rational(
    q: &QuadraticForm<Integers>,
    x: &[BigRational],
    budget: &Budget,
) -> Result<(BigRational, Vec<BigInt>)> {
    let n = q.dim();
    let half = BigRational::new(1.into(), 2.into());
    let mut a: Vec<Vec<BigRational>> = q
        .doubled_gram()
        .into_iter()
        .map(|row| row.into_iter().map(|v| BigRational::from_integer(v) * &half).collect())
        .collect();
    // q(v) = sum_i diag[i] (v_i + sum_{j>i} mu[i][j] v_j)^2
    let mut diag = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let p = a[i][i].clone();
        if !p.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &p;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let v = &a[j][k] - &a[j][i] * &a[i][k] / &p;
                a[j][k] = v;
            }
        }
        diag.push(p);
    }
    let y0: Vec<BigInt> = x.iter().map(crate::rings::integers::round_half_toward_zero).collect();
    let v0: Vec<BigRational> = x.iter().zip(&y0).map(|(xi, yi)| xi - BigRational::from_integer(yi.clone())).collect();
    let mut best = (q.evaluate(&v0)?, y0);
    let mut v = vec![BigRational::zero(); n];
    let mut y = vec![BigInt::zero(); n];
    let ctx = RationalSearch { x, diag: &diag, mu: &mu, budget };
    ctx.descend(n, BigRational::zero(), &mut v, &mut y, &mut best)?;
    Ok(best)
}

struct RationalSearch<'a> {
    x: &'a [BigRational],
    diag: &'a [BigRational],
    mu: &'a [Vec<BigRational>],
    budget: &'a Budget,
}

impl RationalSearch<'_> {
    fn descend(
        &self,
        level: usize,
        acc: BigRational,
        v: &mut [BigRational],
        y: &mut [BigInt],
        best: &mut (BigRational, Vec<BigInt>),
    ) -> Result<()> {
        if level == 0 {
            if acc < best.0 {
                *best = (acc, y.to_vec());
            }
            return Ok(());
        }
        self.budget.charge(1)?;
        let i = level - 1;
        let n = v.len();
        let mut center = self.x[i].clone();
        for j in i + 1..n {
            center += &self.mu[i][j] * &v[j];
        }
        let room = (&best.0 - &acc) / &self.diag[i];
        if room.is_negative() {
            return Ok(());
        }
        let r = room.to_f64().unwrap_or(f64::MAX).sqrt();
        let c = center.to_f64().unwrap_or(0.0);
        let lo = BigInt::from((c - r).floor() as i64 - 1);
        let hi = BigInt::from((c + r).ceil() as i64 + 1);
        let mut yi = lo;
        while yi <= hi {
            let w = &center - BigRational::from_integer(yi.clone());
            let part = &acc + &self.diag[i] * &w * &w;
            if part <= best.0 {
                v[i] = &self.x[i] - BigRational::from_integer(yi.clone());
                y[i] = yi.clone();
                self.descend(i, part, v, y, best)?;
            }
            yi += 1;
        }
        Ok(())
    }
}

fn eval_shifted(g: &[Vec<i128>], c: &[i128], d: i128, y: &[i128]) -> Result<i128> {
    let n = g.len();
    let w: Vec<i128> = (0..n)
        .map(|i| sub(c[i], mul(d, y[i])?))
        .collect::<Result<_>>()?;
    let mut acc = 0i128;
    for i in 0..n {
        for j in 0..n {
            acc = add(acc, mul(mul(w[i], g[i][j])?, w[j])?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;

    fn brute_count(q: &QuadraticForm<Integers>, d: i64, box_bound: i64) -> u64 {
        let n = q.dim();
        let mut count = 0;
        let side = (2 * box_bound + 1) as usize;
        for code in 0..side.pow(n as u32) {
            let mut k = code;
            let x: Vec<BigInt> = (0..n)
                .map(|_| {
                    let v = (k % side) as i64 - box_bound;
                    k /= side;
                    BigInt::from(v)
                })
                .collect();
            if q.evaluate_elems(&x).unwrap() == BigInt::from(d) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        let budget = Limits::default().budget();
        let forms = [
            QuadraticForm::diagonal_z(&[1, 1, 1]).unwrap(),
            QuadraticForm::diagonal_z(&[1, 2, 3]).unwrap(),
            QuadraticForm::new(Integers, 2, vec![(0, 0, 1.into()), (0, 1, 1.into()), (1, 1, 1.into())])
                .unwrap(),
            QuadraticForm::new(
                Integers,
                3,
                vec![(0, 0, 2.into()), (0, 1, 1.into()), (1, 1, 2.into()), (1, 2, (-1).into()), (2, 2, 3.into())],
            )
            .unwrap(),
        ];
        for q in &forms {
            for d in 0..30 {
                let exact = count_representations(q, &BigInt::from(d), &budget).unwrap();
                assert_eq!(exact, brute_count(q, d, 6), "{q:?} d = {d}");
            }
        }
    }

    #[test]
    fn sum_of_four_squares_counts() {
        // r_4(n) = 8 * sum of divisors of n not divisible by 4
        let q = QuadraticForm::diagonal_z(&[1, 1, 1, 1]).unwrap();
        let budget = Limits::default().budget();
        for n in 1..60u64 {
            let sigma: u64 = (1..=n).filter(|d| n % d == 0 && d % 4 != 0).sum();
            assert_eq!(count_representations(&q, &BigInt::from(n), &budget).unwrap(), 8 * sigma);
        }
    }

    #[test]
    fn first_representation_is_lexicographic() {
        let q = QuadraticForm::diagonal_z(&[1, 1, 1]).unwrap();
        let budget = Limits::default().budget();
        let x = first_representation(&q, &BigInt::from(3), &budget).unwrap().unwrap();
        assert_eq!(x, vec![BigInt::from(-1); 3]);
        assert_eq!(first_representation(&q, &BigInt::from(7), &budget).unwrap(), None);
    }

    #[test]
    fn closest_value_matches_box_search() {
        let budget = Limits::default().budget();
        let q = QuadraticForm::new(
            Integers,
            3,
            vec![(0, 0, 2.into()), (0, 1, 1.into()), (1, 1, 2.into()), (1, 2, (-1).into()), (2, 2, 3.into())],
        )
        .unwrap();
        for a in 0..5i64 {
            for b in 0..5i64 {
                let x = vec![
                    BigRational::new(a.into(), 5.into()),
                    BigRational::new(b.into(), 3.into()),
                    BigRational::new((a + b).into(), 4.into()),
                ];
                let (v, y) = closest_value(&q, &x, &budget).unwrap();
                let diff: Vec<BigRational> = x
                    .iter()
                    .zip(&y)
                    .map(|(xi, yi)| xi - BigRational::from_integer(yi.clone()))
                    .collect();
                assert_eq!(q.evaluate(&diff).unwrap(), v);
                let mut best: Option<BigRational> = None;
                for y0 in -3..=3i64 {
                    for y1 in -3..=3i64 {
                        for y2 in -3..=3i64 {
                            let d = [
                                &x[0] - BigRational::from_integer(y0.into()),
                                &x[1] - BigRational::from_integer(y1.into()),
                                &x[2] - BigRational::from_integer(y2.into()),
                            ];
                            let val = q.evaluate(&d).unwrap();
                            if best.as_ref().is_none_or(|b| val < *b) {
                                best = Some(val);
                            }
                        }
                    }
                }
                assert_eq!(Some(v.clone()), best);
                assert_eq!(closest_value_rational(&q, &x, &budget).unwrap().0, v);
            }
        }
    }

    #[test]
    fn indefinite_input_is_rejected() {
        let q = QuadraticForm::diagonal_z(&[1, -1]).unwrap();
        let budget = Limits::default().budget();
        assert_eq!(
            first_representation(&q, &BigInt::from(1), &budget),
            Err(Error::NotPositiveDefinite)
        );
    }
}
