use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingVerdict {
    Embeds {
        reason: String,
    },
    /// The sufficient criterion does not apply; nothing is claimed.
    Inconclusive {
        reason: String,
    },
}

impl EmbeddingVerdict {
    pub fn embeds(&self) -> bool {
        matches!(self, EmbeddingVerdict::Embeds { .. })
    }

    pub fn reason(&self) -> &str {
        match self {
            EmbeddingVerdict::Embeds { reason } | EmbeddingVerdict::Inconclusive { reason } => {
                reason
            }
        }
    }
}

/// Nikulin's sufficient criterion for a primitive embedding of an even
/// lattice into `Λ_K3`: `n₊ ≤ 3`, `n₋ ≤ 19` and `rank ≤ 11`.
pub fn embeds_primitively_in_k3_lattice(l: &Lattice) -> EmbeddingVerdict {
    let sig = l.signature();
    if sig.positive > 3 {
        return EmbeddingVerdict::Inconclusive {
            reason: format!("n_plus = {} exceeds 3", sig.positive),
        };
    }
    if sig.negative > 19 {
        return EmbeddingVerdict::Inconclusive {
            reason: format!("n_minus = {} exceeds 19", sig.negative),
        };
    }
    if l.rank() > 11 {
        return EmbeddingVerdict::Inconclusive {
            reason: format!("rank {} exceeds 11", l.rank()),
        };
    }
    EmbeddingVerdict::Embeds {
        reason: format!("signature {sig} fits in (3,19) and rank {} <= 11", l.rank()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog;

    #[test]
    fn examples() {
        let l = catalog("U")
            .unwrap()
            .direct_sum(&catalog("U").unwrap())
            .direct_sum(&catalog("E8_minus").unwrap());
        assert!(!embeds_primitively_in_k3_lattice(&l).embeds());
        let l = catalog("U")
            .unwrap()
            .direct_sum(&catalog("E8_minus").unwrap());
        assert!(embeds_primitively_in_k3_lattice(&l).embeds());
        let e8 = catalog("E8").unwrap();
        assert!(!embeds_primitively_in_k3_lattice(&e8).embeds());
        assert!(!embeds_primitively_in_k3_lattice(&catalog("LambdaK3").unwrap()).embeds());
    }
}
