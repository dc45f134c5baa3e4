use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::DiscriminantForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscFormVerdict {
    /// `images[i]` is the image of the `i`-th generator of the first form,
    /// as coefficients on the generators of the second.
    Isomorphic {
        images: Vec<Vec<BigInt>>,
    },
    NotIsomorphic {
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

impl DiscFormVerdict {
    pub fn state(&self) -> &'static str {
        match self {
            DiscFormVerdict::Isomorphic { .. } => "Isomorphic",
            DiscFormVerdict::NotIsomorphic { .. } => "NotIsomorphic",
            DiscFormVerdict::Unknown { .. } => "Unknown",
        }
    }
}

/// Looks for a group isomorphism `A₁ → A₂` preserving `q`, by assigning
/// generator images one at a time. An image of `gᵢ` must be killed by
/// `dᵢ`, have the same `q`, and pair with earlier images as `gᵢ` pairs
/// with earlier generators. Since `b` is nondegenerate such a map is
/// injective, hence bijective when the orders agree.
pub fn disc_forms_isomorphic(
    d1: &DiscriminantForm,
    d2: &DiscriminantForm,
    bound: u64,
) -> DiscFormVerdict {
    if d1.invariant_factors() != d2.invariant_factors() {
        return DiscFormVerdict::NotIsomorphic {
            reason: "group_structure".into(),
        };
    }
    let Some(elements) = d2.elements(bound) else {
        return DiscFormVerdict::Unknown {
            reason: format!("discriminant group has more than {bound} elements"),
        };
    };
    if d1.q_fingerprint(bound) != d2.q_fingerprint(bound) {
        return DiscFormVerdict::NotIsomorphic {
            reason: "q_fingerprint".into(),
        };
    }
    let k = d1.length();
    let unit = |i: usize| -> Vec<BigInt> {
        (0..k)
            .map(|j| if i == j { 1.into() } else { BigInt::zero() })
            .collect()
    };
    let candidates: Vec<Vec<&Vec<BigInt>>> = (0..k)
        .map(|i| {
            let d = &d1.invariant_factors()[i];
            let q = d1.q(&unit(i));
            elements
                .iter()
                .filter(|h| {
                    let scaled: Vec<BigInt> = h.iter().map(|x| x * d).collect();
                    d2.normalize(&scaled).iter().all(Zero::is_zero) && d2.q(h) == q
                })
                .collect()
        })
        .collect();
    let mut chosen: Vec<&Vec<BigInt>> = Vec::with_capacity(k);
    if assign(d1, d2, &candidates, &mut chosen, &unit) {
        DiscFormVerdict::Isomorphic {
            images: chosen.into_iter().cloned().collect(),
        }
    } else {
        DiscFormVerdict::NotIsomorphic {
            reason: "no_isometry".into(),
        }
    }
}

fn assign<'a>(
    d1: &DiscriminantForm,
    d2: &DiscriminantForm,
    candidates: &[Vec<&'a Vec<BigInt>>],
    chosen: &mut Vec<&'a Vec<BigInt>>,
    unit: &dyn Fn(usize) -> Vec<BigInt>,
) -> bool {
    let i = chosen.len();
    if i == candidates.len() {
        return true;
    }
    for &h in &candidates[i] {
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(j, prev)| d2.b(h, prev) == d1.b(&unit(i), &unit(j)));
        if ok {
            chosen.push(h);
            if assign(d1, d2, candidates, chosen, unit) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
