//! Genus invariants, discriminant-form comparison, isometry search and the
//! primitive-embedding predicate for the K3 lattice.
//!
//! Verdicts are tri-state. A negative answer is only given when it is
//! certified: either a genus invariant differs or a definite search ran to
//! completion.

mod disc_form;
mod embedding;
pub(crate) mod search;

pub use disc_form::{disc_forms_isomorphic, DiscFormVerdict};
pub use embedding::{embeds_primitively_in_k3_lattice, EmbeddingVerdict};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Signature};
use crate::linalg::IntMatrix;
use search::{find_isometry, SearchOutcome};

/// Environment variable overriding the default witness entry bound.
pub const SEARCH_BOUND_ENV: &str = "HODGELAT_SEARCH_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest absolute entry tried in indefinite witness columns.
    pub entry_bound: u32,
    /// Largest discriminant group for which element-wise data is computed.
    pub fingerprint_bound: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            entry_bound: 8,
            fingerprint_bound: 4096,
        }
    }
}

impl SearchBounds {
    /// Defaults, with the entry bound taken from [`SEARCH_BOUND_ENV`] when
    /// it holds a positive integer.
    pub fn from_env() -> Self {
        let mut bounds = SearchBounds::default();
        if let Some(b) = std::env::var(SEARCH_BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&b| b > 0)
        {
            bounds.entry_bound = b;
        }
        bounds
    }

    pub fn with_entry_bound(mut self, entry_bound: u32) -> Self {
        self.entry_bound = entry_bound;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusInvariants {
    pub rank: usize,
    pub signature: Signature,
    pub discriminant: BigInt,
    pub invariant_factors: Vec<BigInt>,
    /// Sorted `q`-values over all of `A_L`; `None` above the bound.
    pub fingerprint: Option<Vec<BigRational>>,
    pub fingerprint_bound: u64,
}

impl GenusInvariants {
    /// Name of the first invariant that differs, in the order rank,
    /// signature, discriminant, invariant factors, discriminant form.
    /// Fingerprints are only compared when both are present.
    pub fn first_difference(&self, other: &GenusInvariants) -> Option<&'static str> {
        if self.rank != other.rank {
            return Some("rank");
        }
        if self.signature != other.signature {
            return Some("signature");
        }
        if self.discriminant != other.discriminant {
            return Some("discriminant");
        }
        if self.invariant_factors != other.invariant_factors {
            return Some("invariant_factors");
        }
        if let (Some(a), Some(b)) = (&self.fingerprint, &other.fingerprint) {
            if a != b {
                return Some("discriminant_form");
            }
        }
        None
    }
}

pub fn genus_invariants(l: &Lattice, fingerprint_bound: u64) -> GenusInvariants {
    let form = l.discriminant_form();
    GenusInvariants {
        rank: l.rank(),
        signature: l.signature(),
        discriminant: l.discriminant(),
        invariant_factors: form.invariant_factors().to_vec(),
        fingerprint: form.q_fingerprint(fingerprint_bound),
        fingerprint_bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryVerdict {
    Isometric { witness: IntMatrix },
    NotIsometric { reason: String },
    Unknown { reason: String },
}

impl IsometryVerdict {
    /// Checks `fᵀ·G₂·f = G₁` and `det f = ±1` before wrapping the witness.
    pub fn isometric(l1: &Lattice, l2: &Lattice, witness: IntMatrix) -> Result<Self> {
        if witness.rows() != l1.rank() || witness.cols() != l2.rank() || l1.rank() != l2.rank() {
            return Err(Error::AssertionFailed("witness has the wrong shape".into()));
        }
        if !witness.determinant()?.abs().is_one() {
            return Err(Error::AssertionFailed("witness is not unimodular".into()));
        }
        if &(&witness.transpose() * l2.gram()) * &witness != *l1.gram() {
            return Err(Error::AssertionFailed(
                "witness does not carry G₂ to G₁".into(),
            ));
        }
        Ok(IsometryVerdict::Isometric { witness })
    }

    pub fn state(&self) -> &'static str {
        match self {
            IsometryVerdict::Isometric { .. } => "Isometric",
            IsometryVerdict::NotIsometric { .. } => "NotIsometric",
            IsometryVerdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            IsometryVerdict::Isometric { .. } => None,
            IsometryVerdict::NotIsometric { reason } | IsometryVerdict::Unknown { reason } => {
                Some(reason)
            }
        }
    }

    pub fn witness(&self) -> Option<&IntMatrix> {
        match self {
            IsometryVerdict::Isometric { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_isometric(&self) -> bool {
        matches!(self, IsometryVerdict::Isometric { .. })
    }
}

/// Decides or bounds whether `L1 ≅ L2`. The witness `f` maps `L1`
/// coordinates to `L2` coordinates: `fᵀ·G₂·f = G₁`.
pub fn lattices_isometric(l1: &Lattice, l2: &Lattice, bounds: SearchBounds) -> IsometryVerdict {
    let i1 = genus_invariants(l1, bounds.fingerprint_bound);
    let i2 = genus_invariants(l2, bounds.fingerprint_bound);
    if let Some(reason) = i1.first_difference(&i2) {
        return IsometryVerdict::NotIsometric {
            reason: reason.into(),
        };
    }
    if l1.gram() == l2.gram() {
        return IsometryVerdict::Isometric {
            witness: IntMatrix::identity(l1.rank()),
        };
    }
    match find_isometry(l1, l2, bounds.entry_bound, &mut |_| true) {
        SearchOutcome::Found(h) => {
            IsometryVerdict::isometric(l1, l2, h).expect("search returns verified witnesses")
        }
        SearchOutcome::Exhausted => IsometryVerdict::NotIsometric {
            reason: "exhaustive_search".into(),
        },
        SearchOutcome::Incomplete(reason) => IsometryVerdict::Unknown { reason },
    }
}
