//! Exact Gaussian elimination: determinants, inverses, ranks, linear
//! solves and Sylvester inertia.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Counts of positive, negative and zero directions of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn dimension(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl std::ops::Add for Inertia {
    type Output = Inertia;

    fn add(self, rhs: Inertia) -> Inertia {
        Inertia {
            positive: self.positive + rhs.positive,
            negative: self.negative + rhs.negative,
            zero: self.zero + rhs.zero,
        }
    }
}

impl IntMatrix {
    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows();
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// Inverse of a unimodular integer matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        inv.to_integer()
            .ok_or_else(|| Error::DimensionMismatch("matrix is not unimodular".into()))
    }
}

impl RatMatrix {
    pub fn determinant(&self) -> Result<BigRational> {
        self.require_square()?;
        let n = self.rows();
        let mut a = self.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != k {
                a.swap_rows(k, p);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let factor = &a[(i, k)] / &pivot;
                for j in k..n {
                    let v = &a[(i, j)] - &factor * &a[(k, j)];
                    a[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse; singular input yields [`Error::Singular`].
    pub fn inverse(&self) -> Result<RatMatrix> {
        self.require_square()?;
        let n = self.rows();
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a[(i, k)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let pivot = a[(k, k)].clone();
            for j in 0..n {
                let v = &a[(k, j)] / &pivot;
                a[(k, j)] = v;
                let w = &inv[(k, j)] / &pivot;
                inv[(k, j)] = w;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone();
                for j in 0..n {
                    let v = &a[(i, j)] - &factor * &a[(k, j)];
                    a[(i, j)] = v;
                    let w = &inv[(i, j)] - &factor * &inv[(k, j)];
                    inv[(i, j)] = w;
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = self.row_echelon();
        pivots.len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn row_echelon(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let (m, n) = (a.rows(), a.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let pivot = a[(r, c)].clone();
            for j in c..n {
                let v = &a[(r, j)] / &pivot;
                a[(r, j)] = v;
            }
            for i in 0..m {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let factor = a[(i, c)].clone();
                for j in c..n {
                    let v = &a[(i, j)] - &factor * &a[(r, j)];
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// A solution of `self·x = b` if the system is consistent. Free
    /// variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows());
        let (m, n) = (self.rows(), self.cols());
        let augmented = RatMatrix::from_fn(m, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (rref, pivots) = augmented.row_echelon();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![BigRational::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rref[(r, n)].clone();
        }
        Some(x)
    }

    /// Sylvester inertia by symmetric elimination over Q.
    ///
    /// A zero diagonal with a nonzero off-diagonal entry `b` is handled as a
    /// hyperbolic 2×2 pivot block `[[0,b],[b,0]]`, which contributes one
    /// positive and one negative direction.
    pub fn rational_inertia(&self) -> Result<Inertia> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows();
        let mut a = self.clone();
        let mut inertia = Inertia {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        let mut k = 0;
        while k < n {
            if let Some(i) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
                symmetric_swap(&mut a, k, i);
                let pivot = a[(k, k)].clone();
                if pivot.is_positive() {
                    inertia.positive += 1;
                } else {
                    inertia.negative += 1;
                }
                for i in k + 1..n {
                    if a[(i, k)].is_zero() {
                        continue;
                    }
                    let factor = &a[(i, k)] / &pivot;
                    for j in k + 1..n {
                        let v = &a[(i, j)] - &factor * &a[(k, j)];
                        a[(i, j)] = v;
                    }
                }
                k += 1;
                continue;
            }
            let off =
                (k..n).find_map(|i| (i + 1..n).find(|&j| !a[(i, j)].is_zero()).map(|j| (i, j)));
            let Some((i, j)) = off else {
                inertia.zero += n - k;
                break;
            };
            symmetric_swap(&mut a, k, i);
            symmetric_swap(&mut a, k + 1, j);
            let b = a[(k, k + 1)].clone();
            inertia.positive += 1;
            inertia.negative += 1;
            // Schur complement against the block [[0,b],[b,0]], whose inverse
            // is [[0,1/b],[1/b,0]].
            let tail: Vec<usize> = (k + 2..n).collect();
            let coeffs: Vec<(BigRational, BigRational)> = tail
                .iter()
                .map(|&r| (a[(r, k)].clone(), a[(r, k + 1)].clone()))
                .collect();
            for (x, &r) in tail.iter().enumerate() {
                for (y, &s) in tail.iter().enumerate() {
                    let (r0, r1) = &coeffs[x];
                    let (s0, s1) = &coeffs[y];
                    let correction = (r0 * s1 + r1 * s0) / &b;
                    let v = &a[(r, s)] - correction;
                    a[(r, s)] = v;
                }
            }
            k += 2;
        }
        Ok(inertia)
    }
}

fn symmetric_swap(a: &mut RatMatrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
}
