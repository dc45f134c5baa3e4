//! Replayable certificates for the equivalence pipelines.
//!
//! A certificate records a verdict, the premises and cited theorems it
//! rests on, and a chain of checked identities. The first step of every
//! non-empty chain commits to the canonical JSON of the inputs by SHA-256;
//! replay checks the commitment, re-evaluates every relation, and then
//! re-runs the pipeline from the committed inputs and demands an identical
//! certificate.

mod assumptions;
mod pipelines;

pub use assumptions::*;
pub use pipelines::{
    certify_from_inputs, certify_hk_fourfold, certify_l_implies_d, certify_l_implies_d_models,
    certify_moduli_unimodular, certify_t_implies_d, HkFourfoldInput, Polarization,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Claim text of the input commitment step.
pub const COMMITMENT_CLAIM: &str = "sha256(inputs) == commitment";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    DEquivalent,
    HodgeIsometric,
    AmbiguousTorTminus1,
    TwistedDerivedEquivalent,
    Birational,
    ObstructedNotLEquivalent,
    Unknown,
}

impl Verdict {
    pub const ALL: [Verdict; 7] = [
        Verdict::DEquivalent,
        Verdict::HodgeIsometric,
        Verdict::AmbiguousTorTminus1,
        Verdict::TwistedDerivedEquivalent,
        Verdict::Birational,
        Verdict::ObstructedNotLEquivalent,
        Verdict::Unknown,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::DEquivalent => "DEquivalent",
            Verdict::HodgeIsometric => "HodgeIsometric",
            Verdict::AmbiguousTorTminus1 => "AmbiguousTorTminus1",
            Verdict::TwistedDerivedEquivalent => "TwistedDerivedEquivalent",
            Verdict::Birational => "Birational",
            Verdict::ObstructedNotLEquivalent => "ObstructedNotLEquivalent",
            Verdict::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Verdict::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::MalformedCertificate(format!("unknown verdict `{s}`")))
    }
}

/// A premise or cited theorem the verdict depends on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assumption {
    pub cite: String,
    pub quote: String,
}

/// A checked relation `lhs == rhs` or `lhs != rhs`; the operator is part
/// of the claim text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessStep {
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    Equal,
    NotEqual,
}

impl WitnessStep {
    fn relation(&self) -> Option<Relation> {
        let eq = self.claim.find(" == ");
        let ne = self.claim.find(" != ");
        match (eq, ne) {
            (Some(_), None) => Some(Relation::Equal),
            (None, Some(_)) => Some(Relation::NotEqual),
            _ => None,
        }
    }

    /// Whether the recorded relation holds between the recorded values.
    pub fn holds(&self) -> bool {
        match self.relation() {
            Some(Relation::Equal) => self.lhs == self.rhs,
            Some(Relation::NotEqual) => self.lhs != self.rhs,
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceCertificate {
    pub verdict: Verdict,
    pub assumptions: Vec<Assumption>,
    pub witness_chain: Vec<WitnessStep>,
}

pub(crate) fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl EquivalenceCertificate {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificates always serialize")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }

    /// The committed input document, if the chain starts with a commitment.
    pub fn inputs(&self) -> Option<Value> {
        let first = self.witness_chain.first()?;
        if first.claim != COMMITMENT_CLAIM {
            return None;
        }
        serde_json::from_str(&first.lhs).ok()
    }

    pub fn cites(&self, prefix: &str) -> bool {
        self.assumptions.iter().any(|a| a.cite.starts_with(prefix))
    }
}

/// Re-checks a certificate. An empty chain is accepted only with verdict
/// `Unknown`. Failures of any kind yield `false`, except internal
/// assertion failures while regenerating, which are propagated.
pub fn replay_certificate(c: &EquivalenceCertificate) -> Result<bool> {
    let Some(first) = c.witness_chain.first() else {
        return Ok(c.verdict == Verdict::Unknown && c.assumptions.is_empty());
    };
    if first.claim != COMMITMENT_CLAIM || sha256_hex(&first.lhs) != first.rhs {
        return Ok(false);
    }
    if !c.witness_chain[1..].iter().all(WitnessStep::holds) {
        return Ok(false);
    }
    let Ok(inputs) = serde_json::from_str::<Value>(&first.lhs) else {
        return Ok(false);
    };
    match certify_from_inputs(&inputs) {
        Ok(regenerated) => Ok(regenerated == *c),
        Err(e @ Error::AssertionFailed(_)) => Err(e),
        Err(_) => Ok(false),
    }
}

/// Parses a certificate document and replays it.
pub fn replay_json(v: &Value) -> Result<bool> {
    replay_certificate(&EquivalenceCertificate::from_json(v)?)
}
