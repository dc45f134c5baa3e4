//! Univariate polynomials over Q: minimal polynomials of matrices and an
//! exact irreducibility test.
//!
//! Irreducibility is decided in two stages. A modular sieve collects, for
//! several good primes, the degrees a rational factor could possibly have
//! (subset sums of the distinct-degree factorization mod p). Any degree that
//! survives every prime is then settled by Kronecker's interpolation search.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

/// Outcome of [`Polynomial::irreducibility`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// The Kronecker search would exceed its work budget.
    Undecided,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Polynomial::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates the polynomial at a square matrix (Horner scheme).
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &RatMatrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let v = &rem[k + i] - &c * d;
                rem[k + i] = v;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer polynomial with positive leading coefficient and
    /// the same roots.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Decides irreducibility over Q.
    pub fn irreducibility(&self) -> Irreducibility {
        let Some(n) = self.degree() else {
            return Irreducibility::Reducible;
        };
        if n == 0 {
            return Irreducibility::Reducible;
        }
        if n == 1 {
            return Irreducibility::Irreducible;
        }
        if self.gcd(&self.derivative()).degree() != Some(0) {
            return Irreducibility::Reducible;
        }
        let f = self.primitive_part();
        let candidates = possible_factor_degrees(&f);
        let mut undecided = false;
        for k in candidates.into_iter().filter(|&k| k <= n / 2) {
            match kronecker_factor(&f, k) {
                Search::Found => return Irreducibility::Reducible,
                Search::None => {}
                Search::TooLarge => undecided = true,
            }
        }
        if undecided {
            Irreducibility::Undecided
        } else {
            Irreducibility::Irreducible
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Monic minimal polynomial of a square rational matrix.
pub fn minimal_polynomial(m: &RatMatrix) -> Result<Polynomial> {
    m.require_square()?;
    let n = m.rows();
    let mut powers = vec![RatMatrix::identity(n)];
    for d in 1..=n {
        let next = &powers[d - 1] * m;
        let system = RatMatrix::from_fn(n * n, d, |r, c| powers[c].entries()[r].clone());
        if let Some(c) = system.solve(next.entries()) {
            let mut coeffs: Vec<BigRational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(BigRational::one());
            return Ok(Polynomial::new(coeffs));
        }
        powers.push(next);
    }
    Err(Error::AssertionFailed(
        "no annihilating polynomial of degree ≤ n (Cayley–Hamilton violated)".into(),
    ))
}

// ---------------------------------------------------------------------------
// Modular degree sieve.

const SIEVE_PRIMES: usize = 24;

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&p| (2..).take_while(|d| d * d <= p).all(|d| p % d != 0))
}

fn possible_factor_degrees(f: &[BigInt]) -> BTreeSet<usize> {
    let n = f.len() - 1;
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let mut used = 0;
    for p in small_primes().take(400) {
        if used == SIEVE_PRIMES || possible.is_empty() {
            break;
        }
        let lc = f[n].mod_floor(&BigInt::from(p));
        if lc.is_zero() {
            continue;
        }
        let fp: Vec<u64> = f
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect();
        let fp = modp::monic(&modp::trim(fp), p);
        let dfp = modp::trim(modp::derivative(&fp, p));
        if dfp.is_empty() || modp::gcd(fp.clone(), dfp, p).len() > 1 {
            continue;
        }
        used += 1;
        let degrees = modp::distinct_degree_pattern(&fp, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degrees {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        possible.retain(|&k| sums[k]);
    }
    possible
}

mod modp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        let Some(&lc) = a.last() else {
            return Vec::new();
        };
        let li = inv(lc, p);
        a.iter().map(|c| c * li % p).collect()
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect()
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let li = inv(b[db], p);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db] * li % p;
            if c == 0 {
                continue;
            }
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p * p - c * bi % p) % p;
            }
            q[k] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        while !b.is_empty() {
            let (_, r) = div_rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        div_rem(&trim(out), f, p).1
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = div_rem(base, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        result
    }

    /// Degrees of the irreducible factors of a monic squarefree `f` mod p.
    pub fn distinct_degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = f.to_vec();
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut i = 1;
        while f.len() > 2 * i {
            h = powmod(&h, p, &f, p);
            let g = gcd(f.clone(), sub(&h, &x, p), p);
            let dg = g.len() - 1;
            if dg > 0 {
                degrees.extend(std::iter::repeat_n(i, dg / i));
                f = div_rem(&f, &g, p).0;
                h = div_rem(&h, &f, p).1;
            }
            i += 1;
        }
        if f.len() > 1 {
            degrees.push(f.len() - 1);
        }
        degrees
    }
}

// ---------------------------------------------------------------------------
// Kronecker search.

enum Search {
    Found,
    None,
    TooLarge,
}

const KRONECKER_BUDGET: u64 = 400_000;
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn eval_int(f: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn positive_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Looks for an integer factor of exact degree `k` of the primitive `f`.
fn kronecker_factor(f: &[BigInt], k: usize) -> Search {
    // A root at zero is a linear factor.
    if f[0].is_zero() {
        return if k == 1 { Search::Found } else { Search::None };
    }
    let mut points: Vec<(i64, Vec<u64>)> = Vec::new();
    for t in 0..(6 * k as i64 + 12) {
        let x = if t % 2 == 0 { t / 2 } else { -(t + 1) / 2 };
        let v = eval_int(f, x);
        if v.is_zero() {
            return if k == 1 { Search::Found } else { Search::None };
        }
        match v.abs().to_u64() {
            Some(a) if a <= DIVISOR_LIMIT => points.push((x, positive_divisors(a))),
            _ => continue,
        }
    }
    if points.len() < k + 1 {
        return Search::TooLarge;
    }
    points.sort_by_key(|(x, d)| (d.len(), x.unsigned_abs()));
    points.truncate(k + 1);

    let mut combos: u64 = points[0].1.len() as u64;
    for (_, divs) in &points[1..] {
        combos = combos.saturating_mul(2 * divs.len() as u64);
    }
    if combos > KRONECKER_BUDGET {
        return Search::TooLarge;
    }

    let target = Polynomial::new(
        f.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    );
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer((*x).into()))
        .collect();
    let mut values = vec![BigRational::zero(); k + 1];
    if kronecker_recurse(&points, &xs, &mut values, 0, k, &target) {
        Search::Found
    } else {
        Search::None
    }
}

fn kronecker_recurse(
    points: &[(i64, Vec<u64>)],
    xs: &[BigRational],
    values: &mut [BigRational],
    idx: usize,
    k: usize,
    target: &Polynomial,
) -> bool {
    if idx == points.len() {
        let g = interpolate(xs, values);
        if g.degree() != Some(k) || !g.coefficients().iter().all(|c| c.is_integer()) {
            return false;
        }
        return target.div_rem(&g).1.is_zero();
    }
    for &d in &points[idx].1 {
        let signs: &[i64] = if idx == 0 { &[1] } else { &[1, -1] };
        for &s in signs {
            values[idx] = BigRational::from_integer(BigInt::from(d) * s);
            if kronecker_recurse(points, xs, values, idx + 1, k, target) {
                return true;
            }
        }
    }
    false
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Polynomial {
    let mut acc = vec![BigRational::zero(); xs.len()];
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (d, b) in basis.iter().enumerate() {
            acc[d] += b * &scale;
        }
    }
    Polynomial::new(acc)
}
