//! Backtracking search for integral `h` with `hᵀ·G₂·h = G₁`.
//!
//! Column `i` of `h` must be a vector of `G₂`-norm `G₁[i][i]` whose inner
//! products with the earlier columns match row `i` of `G₁`. For definite
//! forms the candidate vectors are all vectors of that norm (Fincke–Pohst
//! over exact rationals), so the search is complete. For indefinite forms
//! candidates come from a coefficient box and a miss proves nothing.

#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::Lattice;
use crate::linalg::IntMatrix;

/// Upper limit on the number of box vectors whose norm is evaluated.
const BOX_CAP: u64 = 2_000_000;
/// Upper limit on short vectors collected for one target norm.
const SHORT_VECTOR_CAP: usize = 200_000;
/// Upper limit on backtracking steps.
const NODE_BUDGET: u64 = 5_000_000;
/// Vector coordinates and Gram entries are kept below this so that every
/// inner product fits comfortably in an `i128`.
const COORD_LIMIT: i128 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Found(IntMatrix),
    /// Complete search with no witness.
    Exhausted,
    Incomplete(String),
}

struct Candidate {
    v: Vec<i128>,
    /// `G₂·v`
    w: Vec<i128>,
}

/// Ordering used to make the first witness canonical: smaller L1 norm
/// first, then coordinatewise with `0 < 1 < -1 < 2 < -2 < …`.
fn candidate_order(a: &[i128], b: &[i128]) -> Ordering {
    let l1 = |v: &[i128]| v.iter().map(|x| x.unsigned_abs()).sum::<u128>();
    l1(a).cmp(&l1(b)).then_with(|| {
        let key = |x: &i128| (x.unsigned_abs(), *x < 0);
        a.iter().map(key).cmp(b.iter().map(key))
    })
}

fn to_small(m: &IntMatrix) -> Option<Vec<Vec<i128>>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.to_i128().filter(|v| v.abs() < COORD_LIMIT))
                .collect()
        })
        .collect()
}

fn mat_vec(g: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    g.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All `v ≠ 0` with `vᵀGv = target` for positive definite `G`.
///
/// `G = Σ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²` is enumerated from the last
/// coordinate down; at each level the admissible `xᵢ` form an interval
/// around `-Σ μᵢⱼ xⱼ`, scanned outwards from the nearest integer.
fn short_vectors(g: &[Vec<i128>], target: i128) -> Option<Vec<Vec<i128>>> {
    let n = g.len();
    if target <= 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let delta = &a[j][i] * &mu[i][k];
                a[j][k] -= delta;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i128; n];
    let bound = BigRational::from_integer(BigInt::from(target));
    let ok = enumerate_level(n - 1, &d, &mu, &mut x, bound, &mut out);
    ok.then_some(out)
}

fn enumerate_level(
    i: usize,
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    x: &mut [i128],
    remaining: BigRational,
    out: &mut Vec<Vec<i128>>,
) -> bool {
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center -= &mu[i][j] * BigRational::from_integer(BigInt::from(x[j]));
    }
    let nearest = center.round().to_integer().to_i128().unwrap_or(i128::MAX);
    if nearest.abs() >= COORD_LIMIT {
        return false;
    }
    for direction in [1i128, -1] {
        let mut t = if direction == 1 { nearest } else { nearest - 1 };
        loop {
            if t.abs() >= COORD_LIMIT {
                return false;
            }
            let offset = BigRational::from_integer(BigInt::from(t)) - &center;
            let cost = &d[i] * &offset * &offset;
            if cost > remaining {
                break;
            }
            x[i] = t;
            let rest = &remaining - cost;
            if i == 0 {
                if rest.is_zero() {
                    out.push(x.to_vec());
                    if out.len() > SHORT_VECTOR_CAP {
                        return false;
                    }
                }
            } else if !enumerate_level(i - 1, d, mu, x, rest, out) {
                return false;
            }
            t += direction;
        }
    }
    x[i] = 0;
    true
}

/// Vectors in `[-b, b]^n` with at most `support` nonzero coordinates.
fn box_vectors(n: usize, b: i128, support: usize, f: &mut dyn FnMut(&[i128])) {
    fn rec(pos: usize, left: usize, b: i128, x: &mut Vec<i128>, f: &mut dyn FnMut(&[i128])) {
        if pos == x.len() {
            f(x);
            return;
        }
        rec(pos + 1, left, b, x, f);
        if left > 0 {
            for t in 1..=b {
                for s in [t, -t] {
                    x[pos] = s;
                    rec(pos + 1, left - 1, b, x, f);
                }
            }
            x[pos] = 0;
        }
    }
    let mut x = vec![0; n];
    rec(0, support, b, &mut x, f);
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Largest support size whose box fits under [`BOX_CAP`].
fn affordable_support(n: usize, b: u32) -> usize {
    let mut total = 0u64;
    for k in 0..=n {
        let count =
            binomial(n as u64, k as u64).saturating_mul((2 * b as u64).saturating_pow(k as u32));
        total = total.saturating_add(count);
        if total > BOX_CAP {
            return k.saturating_sub(1);
        }
    }
    n
}

/// Searches for `h` with `hᵀ·G₂·h = G₁` and `det h = ±1` that also
/// satisfies `accept`. The first witness in candidate order is returned.
pub(crate) fn find_isometry(
    l1: &Lattice,
    l2: &Lattice,
    entry_bound: u32,
    accept: &mut dyn FnMut(&IntMatrix) -> bool,
) -> SearchOutcome {
    let n = l1.rank();
    if l2.rank() != n || l1.signature() != l2.signature() {
        return SearchOutcome::Exhausted;
    }
    let (Some(mut g1), Some(mut g2)) = (to_small(l1.gram()), to_small(l2.gram())) else {
        return SearchOutcome::Incomplete("Gram entries too large for the search".into());
    };
    let sig = l2.signature();
    let definite = sig.positive == 0 || sig.negative == 0;
    if sig.positive == 0 {
        for row in g1.iter_mut().chain(g2.iter_mut()) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }

    let targets: BTreeSet<i128> = (0..n).map(|i| g1[i][i]).collect();
    let mut by_norm: BTreeMap<i128, Vec<Vec<i128>>> = BTreeMap::new();
    let mut incomplete_reason = None;
    if definite {
        for &t in &targets {
            match short_vectors(&g2, t) {
                Some(vs) => {
                    by_norm.insert(t, vs);
                }
                None => return SearchOutcome::Incomplete("too many short vectors".into()),
            }
        }
    } else {
        let b = entry_bound.max(1);
        let support = affordable_support(n, b);
        if support < n {
            incomplete_reason = Some(format!(
                "no witness with entries in [-{b},{b}] and at most {support} nonzero coordinates per column"
            ));
        } else {
            incomplete_reason = Some(format!("no witness with entries in [-{b},{b}]"));
        }
        box_vectors(n, b as i128, support, &mut |v| {
            if v.iter().all(|x| *x == 0) {
                return;
            }
            let norm = dot(v, &mat_vec(&g2, v));
            if targets.contains(&norm) {
                by_norm.entry(norm).or_default().push(v.to_vec());
            }
        });
    }
    let mut columns: Vec<Vec<Candidate>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut vs = by_norm.get(&g1[i][i]).cloned().unwrap_or_default();
        vs.sort_by(|a, b| candidate_order(a, b));
        columns.push(
            vs.into_iter()
                .map(|v| Candidate {
                    w: mat_vec(&g2, &v),
                    v,
                })
                .collect(),
        );
    }

    let mut state = Backtrack {
        g1: &g1,
        columns: &columns,
        chosen: Vec::with_capacity(n),
        nodes: 0,
        accept,
    };
    match state.run() {
        Step::Found(h) => SearchOutcome::Found(h),
        Step::Budget => {
            SearchOutcome::Incomplete(format!("search budget of {NODE_BUDGET} steps exhausted"))
        }
        Step::Continue => match incomplete_reason {
            Some(reason) => SearchOutcome::Incomplete(reason),
            None => SearchOutcome::Exhausted,
        },
    }
}

enum Step {
    Continue,
    Found(IntMatrix),
    Budget,
}

struct Backtrack<'a> {
    g1: &'a [Vec<i128>],
    columns: &'a [Vec<Candidate>],
    chosen: Vec<usize>,
    nodes: u64,
    accept: &'a mut dyn FnMut(&IntMatrix) -> bool,
}

impl Backtrack<'_> {
    fn run(&mut self) -> Step {
        let k = self.chosen.len();
        let n = self.g1.len();
        if k == n {
            let h = IntMatrix::from_fn(n, n, |r, c| {
                BigInt::from(self.columns[c][self.chosen[c]].v[r])
            });
            let unimodular = h.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
            if unimodular && (self.accept)(&h) {
                return Step::Found(h);
            }
            return Step::Continue;
        }
        for idx in 0..self.columns[k].len() {
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Step::Budget;
            }
            let cand = &self.columns[k][idx];
            let compatible = self
                .chosen
                .iter()
                .enumerate()
                .all(|(j, &c)| dot(&self.columns[j][c].v, &cand.w) == self.g1[k][j]);
            if !compatible {
                continue;
            }
            self.chosen.push(idx);
            match self.run() {
                Step::Continue => {}
                other => return other,
            }
            self.chosen.pop();
        }
        Step::Continue
    }
}
