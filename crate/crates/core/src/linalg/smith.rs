//! Smith and Hermite normal forms over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `left · A · right = diag(diagonal)` with `left`, `right` unimodular and
/// `d₁ | d₂ | …` followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal as a full `rows × cols` matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let (m, n) = (self.left.rows(), self.right.rows());
        IntMatrix::from_fn(m, n, |i, j| {
            if i == j {
                self.diagonal[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }
}

fn row_axpy(a: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..a.cols() {
        let delta = q * &a[(source, j)];
        a[(target, j)] -= delta;
    }
}

fn col_axpy(a: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..a.rows() {
        let delta = q * &a[(i, source)];
        a[(i, target)] -= delta;
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols() {
        let v = -&a[(i, j)];
        a[(i, j)] = v;
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, left, right);
            };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&pivot);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut left, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&pivot);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut right, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block; otherwise fold the
            // offending row into the pivot row and reduce again.
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut left, t);
        }
    }
    finish(d, left, right)
}

fn finish(d: IntMatrix, left: IntMatrix, right: IntMatrix) -> SmithDecomposition {
    let diagonal = (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .collect();
    SmithDecomposition {
        left,
        right,
        diagonal,
    }
}

/// Row-style Hermite normal form; zero rows are dropped. `None` for the
/// zero matrix.
pub fn hermite_normal_form(a: &IntMatrix) -> Option<IntMatrix> {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&x, &y| h[(x, c)].abs().cmp(&h[(y, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            let pivot = h[(r, c)].clone();
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&pivot);
                row_axpy(&mut h, i, r, &q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
            }
        }
        r += 1;
    }
    if r == 0 {
        return None;
    }
    Some(IntMatrix::from_fn(r, n, |i, j| h[(i, j)].clone()))
}

/// Z-basis (as rows, in Hermite form) of `{x ∈ Zⁿ : a·x = 0}`; `None` when
/// the kernel is trivial.
pub fn integer_kernel(a: &IntMatrix) -> Option<IntMatrix> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols();
    if r == n {
        return None;
    }
    let basis = IntMatrix::from_fn(n - r, n, |i, j| snf.right[(j, r + i)].clone());
    hermite_normal_form(&basis)
}
