//! Quadratic forms over a normed ring.
//!
//! A form is stored by its polynomial coefficients `c_ij` (i <= j) so that
//! `q(x) = sum_{i<=j} c_ij x_i x_j`. The half-integral Gram matrix
//! `B_ii = c_ii`, `B_ij = c_ij / 2` is derived on demand.

pub mod descriptor;
pub mod lattice;
pub mod predicates;

use crate::error::{Error, Result};
use crate::rings::{Integers, Ring};

pub use descriptor::{AnyForm, FormDescriptor};
pub use predicates::{
    anisotropic_constant_reduction, discriminant_degree, is_definite_diagonal,
    is_isotropic_bounded, is_positive_definite, maximal_by_overlattice_search,
    maximality_special_z, Isotropy, Maximality,
};

/// A vector over the fraction field.
pub type FractionVector<R> = Vec<<R as Ring>::Frac>;

/// Symmetric matrix over the fraction field with `2 B_ij` in the ring.
pub type GramHalfMatrix<R> = Vec<Vec<<R as Ring>::Frac>>;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<R: Ring> {
    ring: R,
    dim: usize,
    // upper triangle, row major
    coeffs: Vec<R::Elem>,
}

fn tri_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // row i starts after rows of lengths dim, dim - 1, ..., dim - i + 1
    i * dim - i * i.saturating_sub(1) / 2 + (j - i)
}

impl<R: Ring> QuadraticForm<R> {
    /// Build a form from `(i, j, c_ij)` triples, 0-based with `i <= j`.
    /// Repeated positions are rejected; absent positions are zero.
    pub fn new(ring: R, dim: usize, entries: Vec<(usize, usize, R::Elem)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parse("a form needs at least one variable".into()));
        }
        let mut coeffs = vec![ring.zero(); dim * (dim + 1) / 2];
        let mut seen = vec![false; coeffs.len()];
        for (i, j, c) in entries {
            if i > j || j >= dim {
                return Err(Error::Parse(format!(
                    "coefficient position ({}, {}) invalid for dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            let k = tri_index(dim, i, j);
            if seen[k] {
                return Err(Error::Parse(format!(
                    "coefficient ({}, {}) given twice",
                    i + 1,
                    j + 1
                )));
            }
            seen[k] = true;
            coeffs[k] = c;
        }
        let form = QuadraticForm { ring, dim, coeffs };
        if form.ring.frac_is_zero(&form.discriminant()) {
            return Err(Error::Degenerate);
        }
        Ok(form)
    }

    pub fn diagonal(ring: R, diag: Vec<R::Elem>) -> Result<Self> {
        let dim = diag.len();
        let entries = diag.into_iter().enumerate().map(|(i, c)| (i, i, c)).collect();
        Self::new(ring, dim, entries)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The coefficient of `x_i x_j` (order of `i`, `j` irrelevant).
    pub fn coeff(&self, i: usize, j: usize) -> &R::Elem {
        &self.coeffs[tri_index(self.dim, i, j)]
    }

    /// Nonzero coefficients as `(i, j, c_ij)` with `i <= j`.
    pub fn terms(&self) -> Vec<(usize, usize, R::Elem)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let c = self.coeff(i, j);
                if !self.ring.is_zero(c) {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.ring.is_zero(self.coeff(i, j))))
    }

    pub fn diagonal_coeffs(&self) -> Option<Vec<R::Elem>> {
        self.is_diagonal()
            .then(|| (0..self.dim).map(|i| self.coeff(i, i).clone()).collect())
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: len,
            });
        }
        Ok(())
    }

    /// `q(x)` for `x` over the fraction field.
    pub fn evaluate(&self, x: &[R::Frac]) -> Result<R::Frac> {
        self.check_dim(x.len())?;
        let r = &self.ring;
        let mut acc = r.frac_zero();
        for i in 0..self.dim {
            if r.frac_is_zero(&x[i]) {
                continue;
            }
            for j in i..self.dim {
                let c = self.coeff(i, j);
                if r.is_zero(c) {
                    continue;
                }
                let term = r.frac_mul(&r.embed(c), &r.frac_mul(&x[i], &x[j]));
                acc = r.frac_add(&acc, &term);
            }
        }
        Ok(acc)
    }

    /// `q(x)` for `x` over the ring, computed in the ring.
    pub fn evaluate_elems(&self, x: &[R::Elem]) -> Result<R::Elem> {
        self.check_dim(x.len())?;
        let r = &self.ring;
        let mut acc = r.zero();
        for i in 0..self.dim {
            if r.is_zero(&x[i]) {
                continue;
            }
            for j in i..self.dim {
                let c = self.coeff(i, j);
                if r.is_zero(c) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(c, &r.mul(&x[i], &x[j])));
            }
        }
        Ok(acc)
    }

    /// The polar bilinear form `x . y` with `x . x = q(x)`.
    pub fn bilinear(&self, x: &[R::Frac], y: &[R::Frac]) -> Result<R::Frac> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let r = &self.ring;
        let mut diag = r.frac_zero();
        let mut off = r.frac_zero();
        for i in 0..self.dim {
            let c = self.coeff(i, i);
            if !r.is_zero(c) {
                diag = r.frac_add(&diag, &r.frac_mul(&r.embed(c), &r.frac_mul(&x[i], &y[i])));
            }
            for j in i + 1..self.dim {
                let c = self.coeff(i, j);
                if r.is_zero(c) {
                    continue;
                }
                let cross = r.frac_add(&r.frac_mul(&x[i], &y[j]), &r.frac_mul(&x[j], &y[i]));
                off = r.frac_add(&off, &r.frac_mul(&r.embed(c), &cross));
            }
        }
        Ok(r.frac_add(&diag, &r.frac_half(&off)))
    }

    pub fn gram_half(&self) -> GramHalfMatrix<R> {
        let r = &self.ring;
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let c = r.embed(self.coeff(i, j));
                        if i == j {
                            c
                        } else {
                            r.frac_half(&c)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant of the half-integral Gram matrix, without normalization.
    pub fn discriminant(&self) -> R::Frac {
        determinant(&self.ring, self.gram_half())
    }

    /// The same form with variables substituted by `x -> U x`.
    pub fn change_of_variables(&self, u: &[Vec<R::Elem>]) -> Result<Self> {
        self.check_dim(u.len())?;
        let r = &self.ring;
        let n = self.dim;
        // new c'_kl read off q(U e_k + U e_l) - q(U e_k) - q(U e_l)
        let col = |k: usize| -> Vec<R::Elem> { (0..n).map(|i| u[i][k].clone()).collect() };
        let mut entries = Vec::new();
        let values: Vec<R::Elem> = (0..n)
            .map(|k| self.evaluate_elems(&col(k)))
            .collect::<Result<_>>()?;
        for k in 0..n {
            entries.push((k, k, values[k].clone()));
            for l in k + 1..n {
                let sum: Vec<R::Elem> = col(k).iter().zip(col(l)).map(|(a, b)| r.add(a, &b)).collect();
                let cross = r.sub(&r.sub(&self.evaluate_elems(&sum)?, &values[k]), &values[l]);
                entries.push((k, l, cross));
            }
        }
        Self::new(r.clone(), n, entries)
    }
}

/// Determinant by Gaussian elimination over the fraction field.
pub fn determinant<R: Ring>(ring: &R, mut m: Vec<Vec<R::Frac>>) -> R::Frac {
    let n = m.len();
    let mut det = ring.frac_one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !ring.frac_is_zero(&m[r][col])) else {
            return ring.frac_zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = ring.frac_neg(&det);
        }
        let p = m[col][col].clone();
        det = ring.frac_mul(&det, &p);
        let inv = ring.frac_inv(&p).expect("pivot is nonzero");
        for r in col + 1..n {
            if ring.frac_is_zero(&m[r][col]) {
                continue;
            }
            let factor = ring.frac_mul(&m[r][col], &inv);
            for c in col..n {
                let t = ring.frac_mul(&factor, &m[col][c]);
                m[r][c] = ring.frac_sub(&m[r][c], &t);
            }
        }
    }
    det
}

impl QuadraticForm<Integers> {
    /// Integer Gram matrix `G = 2B` of the doubled form `2q(x) = x^T G x`.
    pub fn doubled_gram(&self) -> Vec<Vec<num_bigint::BigInt>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            self.coeff(i, i) * 2
                        } else {
                            self.coeff(i, j).clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Diagonal form from machine integers.
    pub fn diagonal_z(diag: &[i64]) -> Result<Self> {
        Self::diagonal(Integers, diag.iter().map(|&a| a.into()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{PolyRing, RatFunc};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn hex() -> QuadraticForm<Integers> {
        QuadraticForm::new(
            Integers,
            2,
            vec![(0, 0, 1.into()), (0, 1, 1.into()), (1, 1, 1.into())],
        )
        .unwrap()
    }

    #[test]
    fn triangular_indexing_is_a_bijection() {
        for n in 1..7 {
            let mut seen = vec![false; n * (n + 1) / 2];
            for i in 0..n {
                for j in i..n {
                    let k = tri_index(n, i, j);
                    assert!(!seen[k]);
                    seen[k] = true;
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn evaluate_examples() {
        let sum3 = QuadraticForm::diagonal_z(&[1, 1, 1]).unwrap();
        let half = vec![q(1, 2); 3];
        assert_eq!(sum3.evaluate(&half).unwrap(), q(3, 4));
        let q2 = QuadraticForm::diagonal_z(&[2, 2]).unwrap();
        assert_eq!(q2.evaluate(&[q(1, 2), q(1, 2)]).unwrap(), q(1, 1));
        assert_eq!(hex().evaluate(&[q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
        assert_eq!(
            sum3.evaluate(&[q(1, 1)]),
            Err(Error::DimensionMismatch { expected: 3, got: 1 })
        );
    }

    #[test]
    fn bilinear_examples() {
        let sum2 = QuadraticForm::diagonal_z(&[1, 1]).unwrap();
        let e1 = [q(1, 1), q(0, 1)];
        let e2 = [q(0, 1), q(1, 1)];
        assert_eq!(sum2.bilinear(&e1, &e2).unwrap(), q(0, 1));
        let ones = [q(1, 1), q(1, 1)];
        assert_eq!(sum2.bilinear(&ones, &ones).unwrap(), q(2, 1));
        assert_eq!(hex().bilinear(&e1, &e2).unwrap(), q(1, 2));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(QuadraticForm::diagonal_z(&[1, 1, 1]).unwrap().discriminant(), q(1, 1));
        assert_eq!(QuadraticForm::diagonal_z(&[2, 3, 5]).unwrap().discriminant(), q(30, 1));
        // 2x2 determinant of [[1, 1/2], [1/2, 1]]
        let direct = q(1, 1) * q(1, 1) - q(1, 2) * q(1, 2);
        assert_eq!(hex().discriminant(), direct);
        assert_eq!(direct, q(3, 4));
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        let err = QuadraticForm::new(
            Integers,
            2,
            vec![(0, 0, 1.into()), (0, 1, 2.into()), (1, 1, 1.into())],
        );
        assert_eq!(err, Err(Error::Degenerate));
        assert_eq!(QuadraticForm::diagonal_z(&[1, 0]), Err(Error::Degenerate));
    }

    #[test]
    fn polynomial_forms_evaluate() {
        let r = PolyRing::new(3).unwrap();
        let form = QuadraticForm::diagonal(r.clone(), vec![r.one(), r.one()]).unwrap();
        let t = r.poly(&[0, 1]).unwrap();
        let x: Vec<RatFunc> = vec![r.ratio(&r.one(), &t).unwrap(), r.frac_zero()];
        let v = form.evaluate(&x).unwrap();
        assert_eq!(v, r.ratio(&r.one(), &r.mul(&t, &t)).unwrap());
    }
}
