//! Exact integer and rational matrix kernel. Nothing here touches floating
//! point.

mod elimination;
mod matrix;
mod smith;

pub use elimination::Inertia;
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use smith::{hermite_normal_form, integer_kernel, smith_normal_form, SmithDecomposition};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;

/// Determinant of a square integer matrix.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    a.determinant()
}

/// Determinant of a square rational matrix.
pub fn rational_determinant(a: &RatMatrix) -> Result<BigRational> {
    a.determinant()
}

pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    a.inverse()
}

pub fn rational_inertia(g: &RatMatrix) -> Result<Inertia> {
    g.rational_inertia()
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Canonical `"p/q"` rendering with positive denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
