//! Even non-degenerate integral lattices given by a Gram matrix.

mod discriminant;
mod sublattice;

pub use discriminant::{mod_one, mod_two, DiscriminantForm};
pub use sublattice::{orthogonal_complement, saturation, Sublattice};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

/// Signature `(n₊, n₋)` of a non-degenerate form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize) -> Self {
        Signature { positive, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    /// Signature after negating the form.
    pub fn flipped(&self) -> Self {
        Signature::new(self.negative, self.positive)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

/// An even, non-degenerate, symmetric integral bilinear form in a fixed basis.
#[derive(Clone)]
pub struct Lattice {
    gram: IntMatrix,
    label: Option<String>,
}

impl PartialEq for Lattice {
    /// Equality of Gram matrices; labels are display-only.
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "Lattice({l}: {})", self.gram),
            None => write!(f, "Lattice({})", self.gram),
        }
    }
}

impl Lattice {
    /// Validates symmetry, non-degeneracy and evenness.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        gram.require_square()?;
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if let Some(index) = (0..gram.rows()).find(|&i| gram[(i, i)].is_odd()) {
            return Err(Error::OddLattice {
                index,
                value: gram[(index, index)].clone(),
            });
        }
        if gram.determinant()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn from_rows<I: Into<BigInt>>(rows: Vec<Vec<I>>) -> Result<Self> {
        Lattice::new(IntMatrix::from_rows(rows)?)
    }

    /// Rank-one lattice `⟨n⟩`.
    pub fn rank_one(n: i64) -> Result<Self> {
        Lattice::from_rows(vec![vec![n]]).map(|l| l.with_label(format!("<{n}>")))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rational_gram(&self) -> RatMatrix {
        self.gram.to_rational()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("gram is square")
    }

    /// `|det(gram)|`, the order of the discriminant group.
    pub fn discriminant(&self) -> BigInt {
        self.determinant().abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.discriminant() == BigInt::from(1)
    }

    pub fn signature(&self) -> Signature {
        let inertia = self
            .rational_gram()
            .rational_inertia()
            .expect("gram is symmetric");
        debug_assert_eq!(inertia.zero, 0);
        Signature::new(inertia.positive, inertia.negative)
    }

    pub fn is_definite(&self) -> bool {
        let s = self.signature();
        s.positive == 0 || s.negative == 0
    }

    pub fn inner(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        self.gram.bilinear(v, w)
    }

    /// `L(n)`: the same group with the form multiplied by `n`.
    pub fn rescale(&self, n: i64) -> Result<Lattice> {
        if n == 0 {
            return Err(Error::ZeroScale);
        }
        let gram = self.gram.scale(&BigInt::from(n));
        let out = Lattice::new(gram)?;
        let expected = BigInt::from(n).abs().pow(self.rank() as u32) * self.discriminant();
        if out.discriminant() != expected {
            return Err(Error::AssertionFailed(format!(
                "disc(L({n})) = {} but |n|^rk·disc(L) = {expected}",
                out.discriminant()
            )));
        }
        Ok(match &self.label {
            Some(l) => out.with_label(format!("{l}({n})")),
            None => out,
        })
    }

    /// Orthogonal direct sum with block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let gram = self.gram.block_diagonal(&other.gram);
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice { gram, label }
    }

    pub fn discriminant_form(&self) -> DiscriminantForm {
        DiscriminantForm::of(self)
    }

    /// `gcd { v·w : w ∈ L }`, the divisibility of `v`.
    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a rank {} lattice",
                v.len(),
                self.rank()
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(self
            .gram
            .mul_vec(v)
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x)))
    }
}

/// Validates a Gram matrix as an even non-degenerate lattice.
pub fn make_lattice(gram: IntMatrix) -> Result<Lattice> {
    Lattice::new(gram)
}

/// Named lattices used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogLattice {
    /// The hyperbolic plane `[[0,1],[1,0]]`.
    U,
    /// The positive-definite `E8` root lattice.
    E8,
    /// `E8(-1)`.
    E8Minus,
    /// `U³ ⊕ E8(-1)²`.
    LambdaK3,
}

impl CatalogLattice {
    pub const ALL: [CatalogLattice; 4] = [
        CatalogLattice::U,
        CatalogLattice::E8,
        CatalogLattice::E8Minus,
        CatalogLattice::LambdaK3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CatalogLattice::U => "U",
            CatalogLattice::E8 => "E8",
            CatalogLattice::E8Minus => "E8_minus",
            CatalogLattice::LambdaK3 => "LambdaK3",
        }
    }

    pub fn lattice(&self) -> Lattice {
        let l = match self {
            CatalogLattice::U => hyperbolic_plane(),
            CatalogLattice::E8 => e8(),
            CatalogLattice::E8Minus => e8().rescale(-1).expect("nonzero scale"),
            CatalogLattice::LambdaK3 => {
                let u = hyperbolic_plane();
                let e = e8().rescale(-1).expect("nonzero scale");
                u.direct_sum(&u)
                    .direct_sum(&u)
                    .direct_sum(&e)
                    .direct_sum(&e)
            }
        };
        l.with_label(self.name())
    }
}

impl FromStr for CatalogLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogLattice::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCatalog(s.to_string()))
    }
}

/// Looks a lattice up by catalog name.
pub fn catalog(name: &str) -> Result<Lattice> {
    name.parse::<CatalogLattice>().map(|c| c.lattice())
}

fn hyperbolic_plane() -> Lattice {
    Lattice::from_rows(vec![vec![0, 1], vec![1, 0]]).expect("U is valid")
}

/// Cartan matrix of E8 with simple roots in Bourbaki order: the chain
/// 1–3–4–5–6–7–8 with node 2 attached to node 4.
fn e8() -> Lattice {
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let gram = IntMatrix::from_fn(8, 8, |i, j| {
        if i == j {
            BigInt::from(2)
        } else if EDGES.contains(&(i, j)) || EDGES.contains(&(j, i)) {
            BigInt::from(-1)
        } else {
            BigInt::zero()
        }
    });
    Lattice::new(gram).expect("E8 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_lattice_examples() {
        let u = Lattice::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u, catalog("U").unwrap());
        let two = Lattice::from_rows(vec![vec![2]]).unwrap();
        assert_eq!(two.rank(), 1);
        assert!(matches!(
            Lattice::from_rows(vec![vec![1]]),
            Err(Error::OddLattice { index: 0, .. })
        ));
        assert_eq!(
            Lattice::from_rows(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric)
        );
        assert_eq!(
            Lattice::from_rows(vec![vec![2, 2], vec![2, 2]]),
            Err(Error::Degenerate)
        );
    }

    #[test]
    fn catalog_invariants() {
        let cases = [
            ("U", 2, (1, 1)),
            ("E8", 8, (8, 0)),
            ("E8_minus", 8, (0, 8)),
            ("LambdaK3", 22, (3, 19)),
        ];
        for (name, rank, (p, n)) in cases {
            let l = catalog(name).unwrap();
            assert_eq!(l.rank(), rank, "{name}");
            assert_eq!(l.discriminant(), BigInt::from(1), "{name}");
            assert_eq!(l.signature(), Signature::new(p, n), "{name}");
        }
        assert!(matches!(catalog("D4"), Err(Error::UnknownCatalog(_))));
    }

    #[test]
    fn rescale_examples() {
        let u = catalog("U").unwrap();
        assert_eq!(u.rescale(1).unwrap(), u);
        assert_eq!(u.rescale(2).unwrap().discriminant(), BigInt::from(4));
        let e = catalog("E8").unwrap().rescale(-1).unwrap();
        assert_eq!(e.signature(), Signature::new(0, 8));
        assert_eq!(e.discriminant(), BigInt::from(1));
        assert_eq!(u.rescale(0), Err(Error::ZeroScale));
    }

    #[test]
    fn direct_sum_examples() {
        let u = catalog("U").unwrap();
        let uu = u.direct_sum(&u);
        assert_eq!((uu.rank(), uu.discriminant()), (4, BigInt::from(1)));
        let s = Lattice::rank_one(2)
            .unwrap()
            .direct_sum(&Lattice::rank_one(-2).unwrap());
        assert_eq!(s.discriminant(), BigInt::from(4));
        assert_eq!(s.signature(), Signature::new(1, 1));
        let ue = u.direct_sum(&catalog("E8_minus").unwrap());
        assert_eq!((ue.rank(), ue.discriminant()), (10, BigInt::from(1)));
    }

    #[test]
    fn divisibility_examples() {
        let u = catalog("U").unwrap();
        let v = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        assert_eq!(u.divisibility(&v(1, 1)).unwrap(), BigInt::from(1));
        assert_eq!(
            u.rescale(2).unwrap().divisibility(&v(1, 0)).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(u.divisibility(&v(2, 0)).unwrap(), BigInt::from(2));
        assert_eq!(u.divisibility(&v(0, 0)), Err(Error::ZeroVector));
    }
}
