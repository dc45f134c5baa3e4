//! Small-integer oracles shared by the integration tests. Everything here
//! is written against plain `i128` arrays and does not call the library's
//! linear algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use hodgelat::lattice::Lattice;
use hodgelat::linalg::IntMatrix;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<i128>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fraction-free Gaussian elimination.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn diag(d: &[i128]) -> Mat {
    let n = d.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect())
        .collect()
}

pub fn block(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n + m]; n + m];
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i]);
    }
    for i in 0..m {
        out[n + i][n..].copy_from_slice(&b[i]);
    }
    out
}

pub fn scale(a: &Mat, c: i128) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

/// `fᵀ·g·f`.
pub fn congruent(g: &Mat, f: &Mat) -> Mat {
    mul(&mul(&transpose(f), g), f)
}

pub fn to_int_matrix(m: &Mat) -> IntMatrix {
    IntMatrix::from_rows(
        m.iter()
            .map(|r| r.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
            .collect(),
    )
    .expect("rectangular")
}

pub fn from_int_matrix(m: &IntMatrix) -> Mat {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i128().expect("small entry"))
                .collect()
        })
        .collect()
}

pub fn lattice(m: &Mat) -> Lattice {
    Lattice::new(to_int_matrix(m)).expect("valid even lattice")
}

pub fn u() -> Mat {
    vec![vec![0, 1], vec![1, 0]]
}

/// Cartan matrix of E8 from its Dynkin diagram.
pub fn e8() -> Mat {
    let mut m = scale(&identity(8), 2);
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    m
}

/// Random symmetric matrix with even diagonal and nonzero determinant.
pub fn random_even(rng: &mut ChaCha8Rng, max_rank: usize, entry: i128) -> Mat {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let mut m = vec![vec![0i128; n]; n];
        for i in 0..n {
            m[i][i] = 2 * rng.gen_range(-entry..=entry);
            for j in i + 1..n {
                let x = rng.gen_range(-entry..=entry);
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        if det(&m) != 0 {
            return m;
        }
    }
}

/// A product of elementary matrices and sign changes, so `det = ±1`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Mat {
    let mut m = identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m[0][0] = -1;
        }
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-1..=1);
        for r in 0..n {
            m[r][i] += c * m[r][j];
        }
        if rng.gen_bool(0.1) {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    m
}

/// Inverse of a unimodular matrix by the adjugate.
pub fn unimodular_inverse(m: &Mat) -> Mat {
    let n = m.len();
    let d = det(m);
    assert!(d == 1 || d == -1, "not unimodular");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Mat = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                        .collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sign * det(&minor) * d
                })
                .collect()
        })
        .collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
