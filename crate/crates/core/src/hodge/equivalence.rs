use super::{HodgeEndomorphism, HodgeLatticeModel};
use crate::error::{Error, Result};
use crate::isometry::search::{find_isometry, SearchOutcome};
use crate::isometry::{genus_invariants, SearchBounds};
use crate::linalg::IntMatrix;

/// Outcome of comparing two admissible twists of one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistEquivalence {
    /// `h ∈ GL(T)` commuting with the generator with `hᵀ·(ψᵀG)·h = φᵀG`.
    Equivalent(IntMatrix),
    NotEquivalent(String),
    Unknown(String),
}

impl TwistEquivalence {
    pub fn state(&self) -> &'static str {
        match self {
            TwistEquivalence::Equivalent(_) => "Equivalent",
            TwistEquivalence::NotEquivalent(_) => "NotEquivalent",
            TwistEquivalence::Unknown(_) => "Unknown",
        }
    }
}

/// Decides or bounds whether `φ = h∗ψ` for some automorphism `h` of the
/// underlying group of `T` that commutes with the generator, i.e. whether
/// `T_φ` and `T_ψ` are Hodge isometric.
pub fn twists_equivalent(
    t: &HodgeLatticeModel,
    phi: &HodgeEndomorphism,
    psi: &HodgeEndomorphism,
    bounds: SearchBounds,
) -> Result<TwistEquivalence> {
    let t_phi = t.twist(phi)?;
    let t_psi = t.twist(psi)?;
    if phi.matrix() == psi.matrix() {
        return Ok(TwistEquivalence::Equivalent(IntMatrix::identity(t.rank())));
    }
    let g1 = genus_invariants(t_phi.lattice(), bounds.fingerprint_bound);
    let g2 = genus_invariants(t_psi.lattice(), bounds.fingerprint_bound);
    if let Some(reason) = g1.first_difference(&g2) {
        return Ok(TwistEquivalence::NotEquivalent(reason.into()));
    }
    let generator = t.generator();
    let mut commutes = |h: &IntMatrix| {
        let h = h.to_rational();
        &h * generator == generator * &h
    };
    let outcome = find_isometry(
        t_phi.lattice(),
        t_psi.lattice(),
        bounds.entry_bound,
        &mut commutes,
    );
    Ok(match outcome {
        SearchOutcome::Found(h) => {
            if &(&h.transpose() * t_psi.gram()) * &h != *t_phi.gram() {
                return Err(Error::AssertionFailed(
                    "twist witness fails hᵀ·G_ψ·h = G_φ".into(),
                ));
            }
            TwistEquivalence::Equivalent(h)
        }
        SearchOutcome::Exhausted => TwistEquivalence::NotEquivalent("exhaustive_search".into()),
        SearchOutcome::Incomplete(reason) => TwistEquivalence::Unknown(reason),
    })
}
