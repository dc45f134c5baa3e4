use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use super::{
    assumptions as cite, sha256_hex, Assumption, EquivalenceCertificate, Verdict, WitnessStep,
    COMMITMENT_CLAIM,
};
use crate::error::{Error, Result};
use crate::hodge::HodgeLatticeModel;
use crate::isometry::genus_invariants;
use crate::json::{
    genus_to_json, int_vector_from_json, int_vector_to_json, k3_model_from_json, k3_model_to_json,
    lattice_from_json, lattice_to_json, model_from_json, model_to_json, to_canonical_string,
};
use crate::k3::{l_equivalence_disc_check, K3SurfaceModel};
use crate::lattice::{Lattice, Signature};
use crate::linalg::format_rational;

/// Fingerprints for the genus comparison inside certificates. Larger
/// groups are compared by invariant factors only.
const GENUS_FINGERPRINT_BOUND: u64 = 4096;

struct Builder {
    assumptions: Vec<Assumption>,
    steps: Vec<WitnessStep>,
}

impl Builder {
    fn new(inputs: &Value) -> Self {
        let canonical = to_canonical_string(inputs);
        let digest = sha256_hex(&canonical);
        Builder {
            assumptions: Vec::new(),
            steps: vec![WitnessStep {
                claim: COMMITMENT_CLAIM.into(),
                lhs: canonical,
                rhs: digest,
            }],
        }
    }

    fn assume(&mut self, a: Assumption) {
        if !self.assumptions.contains(&a) {
            self.assumptions.push(a);
        }
    }

    fn step(&mut self, left: &str, op: &str, right: &str, lhs: impl ToString, rhs: impl ToString) {
        let step = WitnessStep {
            claim: format!("{left} {op} {right}"),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        };
        debug_assert!(step.holds(), "recorded a false claim: {step:?}");
        self.steps.push(step);
    }

    fn equal(&mut self, left: &str, right: &str, lhs: impl ToString, rhs: impl ToString) {
        self.step(left, "==", right, lhs, rhs)
    }

    fn not_equal(&mut self, left: &str, right: &str, lhs: impl ToString, rhs: impl ToString) {
        self.step(left, "!=", right, lhs, rhs)
    }

    fn finish(self, verdict: Verdict) -> EquivalenceCertificate {
        EquivalenceCertificate {
            verdict,
            assumptions: self.assumptions,
            witness_chain: self.steps,
        }
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::PremiseRejected(msg.into())
}

fn k3_transcendental_signature(rank: usize) -> Signature {
    Signature::new(2, rank.saturating_sub(2))
}

fn genus_string(l: &Lattice) -> String {
    to_canonical_string(&genus_to_json(&genus_invariants(
        l,
        GENUS_FINGERPRINT_BOUND,
    )))
}

/// The shared core: from T-equivalence with equal discriminants to a
/// Hodge isometry `T(Y) ≅ T(X)` (or the rank-4 ambiguity).
fn t_implies_d_core(
    b: &mut Builder,
    tx: &HodgeLatticeModel,
    ty: &HodgeLatticeModel,
) -> Result<Verdict> {
    if !tx.is_scalar() {
        return Err(reject(format!(
            "End(T_X) must be Z, but the model's endomorphism field has degree {}",
            tx.field_degree()
        )));
    }
    b.assume(cite::scalar_endomorphisms());
    b.assume(cite::t_equivalence());
    b.assume(cite::twist_correspondence());
    b.equal("[E(T_X):Q]", "1", tx.field_degree(), 1);

    let r = tx.rank();
    if ty.rank() != r {
        return Err(reject(format!(
            "T-equivalent lattices have equal rank, got {r} and {}",
            ty.rank()
        )));
    }
    b.equal("rank(T_X)", "rank(T_Y)", r, ty.rank());

    let (dx, dy) = (tx.lattice().discriminant(), ty.lattice().discriminant());
    if dx != dy {
        return Err(reject(format!(
            "disc(T_X) = {dx} differs from disc(T_Y) = {dy}; L-equivalent K3 surfaces have equal transcendental discriminants"
        )));
    }
    b.equal("disc(T_X)", "disc(T_Y)", &dx, &dy);

    let k3_sig = k3_transcendental_signature(r);
    for (name, t) in [("signature(T_X)", tx), ("signature(T_Y)", ty)] {
        if t.lattice().signature() != k3_sig {
            return Err(reject(format!(
                "{name} is {}, expected the K3 transcendental signature {k3_sig}",
                t.lattice().signature()
            )));
        }
        b.equal(name, "(2,rank-2)", t.lattice().signature(), k3_sig);
    }

    // |q|^r · disc(T_X) = disc(T_Y) forces q = ±1.
    let twists = tx.enumerate_scalar_twists(&dy)?;
    let minus_one = -BigRational::one();
    if twists != vec![minus_one.clone(), BigRational::one()] {
        return Err(Error::AssertionFailed(format!(
            "expected scalar twists ±1, found {twists:?}"
        )));
    }
    let listed = twists
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",");
    b.equal(
        "admissible scalar twists",
        "{-1,1}",
        format!("{{{listed}}}"),
        "{-1/1,1/1}",
    );

    let minus = tx.scalar_endomorphism(&minus_one)?;
    let check = tx.verify_twist_discriminant(&minus)?;
    b.equal("disc(T_X(-1))", "disc(T_Y)", &check.disc_twisted, &dy);
    let tx_minus = tx.twist(&minus)?;
    let sig_minus = tx_minus.lattice().signature();

    let gx = genus_string(tx.lattice());
    let gy = genus_string(ty.lattice());
    let gm = genus_string(tx_minus.lattice());
    if r != 4 {
        b.not_equal(
            "signature(T_X(-1))",
            "signature(T_Y)",
            sig_minus,
            ty.lattice().signature(),
        );
        if gx != gy {
            return Err(reject(
                "T_Y is not in the genus of T_X, contradicting the T-equivalence premise",
            ));
        }
        b.equal("genus(T_X)", "genus(T_Y)", &gx, &gy);
        b.equal("q", "1", "1", "1");
        b.assume(cite::derived_torelli());
        Ok(Verdict::DEquivalent)
    } else {
        b.equal(
            "signature(T_X(-1))",
            "signature(T_Y)",
            sig_minus,
            ty.lattice().signature(),
        );
        if gx != gy && gm != gy {
            return Err(reject(
                "T_Y is in the genus of neither T_X nor T_X(-1), contradicting the T-equivalence premise",
            ));
        }
        Ok(Verdict::AmbiguousTorTminus1)
    }
}

/// From T-equivalence of K3 surfaces with equal transcendental
/// discriminants and `End(T(X)) = Z` to D-equivalence, except in rank 4.
pub fn certify_t_implies_d(
    tx: &HodgeLatticeModel,
    ty: &HodgeLatticeModel,
) -> Result<EquivalenceCertificate> {
    let inputs = json!({"mode": "t", "t_x": model_to_json(tx), "t_y": model_to_json(ty)});
    let mut b = Builder::new(&inputs);
    let verdict = t_implies_d_core(&mut b, tx, ty)?;
    Ok(b.finish(verdict))
}

fn l_implies_d_steps(
    b: &mut Builder,
    tx: &HodgeLatticeModel,
    ty: &HodgeLatticeModel,
    rho: (usize, usize),
) -> Result<Verdict> {
    b.assume(cite::l_equivalence());
    b.assume(cite::disc_invariance());
    let (dx, dy) = (tx.lattice().discriminant(), ty.lattice().discriminant());
    if dx != dy {
        b.not_equal("disc(T_X)", "disc(T_Y)", &dx, &dy);
        return Ok(Verdict::ObstructedNotLEquivalent);
    }
    for (name, r) in [("picard_rank(X)", rho.0), ("picard_rank(Y)", rho.1)] {
        if r == 18 {
            return Err(reject(format!(
                "{name} = 18 is excluded (rho != 18 required)"
            )));
        }
        b.not_equal(name, "18", r, 18);
    }
    b.assume(cite::picard_not_18());
    b.assume(cite::l_implies_t());
    t_implies_d_core(b, tx, ty)
}

/// L-equivalence to D-equivalence for K3 surfaces given by their
/// transcendental models; the Picard rank is `22 - rank(T)`.
pub fn certify_l_implies_d(
    tx: &HodgeLatticeModel,
    ty: &HodgeLatticeModel,
) -> Result<EquivalenceCertificate> {
    let inputs = json!({"mode": "k3", "t_x": model_to_json(tx), "t_y": model_to_json(ty)});
    let mut b = Builder::new(&inputs);
    let rho = |t: &HodgeLatticeModel| {
        22usize.checked_sub(t.rank()).ok_or_else(|| {
            reject(format!(
                "a K3 transcendental lattice has rank at most 22, got {}",
                t.rank()
            ))
        })
    };
    let verdict = l_implies_d_steps(&mut b, tx, ty, (rho(tx)?, rho(ty)?))?;
    Ok(b.finish(verdict))
}

/// [`certify_l_implies_d`] for full K3 models.
pub fn certify_l_implies_d_models(
    mx: &K3SurfaceModel,
    my: &K3SurfaceModel,
) -> Result<EquivalenceCertificate> {
    let inputs = json!({"mode": "k3", "x": k3_model_to_json(mx), "y": k3_model_to_json(my)});
    let mut b = Builder::new(&inputs);
    let check = l_equivalence_disc_check(mx, my);
    debug_assert!(check.certified);
    let verdict = l_implies_d_steps(
        &mut b,
        mx.t_model(),
        my.t_model(),
        (mx.picard_rank(), my.picard_rank()),
    )?;
    Ok(b.finish(verdict))
}

/// An ample class `H` given as a vector in a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub lattice: Lattice,
    pub vector: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkFourfoldInput {
    /// Whether a Hodge isometry `T(X) ≅ T(Y)` has been established.
    pub t_iso: bool,
    /// `H² = 2g`.
    pub g: u64,
    pub d: u64,
    /// `div(H)`, if known directly.
    pub div_h: Option<u64>,
    /// Used to compute `div(H)` and check `H² = 2g`.
    pub polarization: Option<Polarization>,
}

impl HkFourfoldInput {
    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("mode".into(), json!("hk4"));
        obj.insert("t_iso".into(), json!(self.t_iso));
        obj.insert("g".into(), json!(self.g));
        obj.insert("d".into(), json!(self.d));
        if let Some(div) = self.div_h {
            obj.insert("div_h".into(), json!(div));
        }
        if let Some(p) = &self.polarization {
            obj.insert(
                "polarization".into(),
                json!({"lattice": lattice_to_json(&p.lattice), "vector": int_vector_to_json(&p.vector)}),
            );
        }
        Value::Object(obj)
    }
}

/// Case split for K3^[2]-type fourfolds of Picard rank one.
pub fn certify_hk_fourfold(input: &HkFourfoldInput) -> Result<EquivalenceCertificate> {
    let mut b = Builder::new(&input.to_json());
    if input.g == 0 || input.d == 0 {
        return Err(reject("g and d must be positive"));
    }
    let div = match (&input.polarization, input.div_h) {
        (None, None) => {
            return Err(reject(
                "div(H) is required, directly or through a polarization",
            ))
        }
        (None, Some(div)) => {
            if div == 0 {
                return Err(reject("div(H) must be positive"));
            }
            BigInt::from(div)
        }
        (Some(p), given) => {
            let square = p.lattice.inner(&p.vector, &p.vector);
            let two_g = BigInt::from(2 * input.g);
            if square != two_g {
                return Err(reject(format!("H^2 = {square} but 2g = {two_g}")));
            }
            b.equal("H.H", "2g", &square, &two_g);
            let div = p.lattice.divisibility(&p.vector)?;
            if let Some(given) = given {
                if div != BigInt::from(given) {
                    return Err(reject(format!(
                        "div(H) = {div} computed from the lattice, but {given} was given"
                    )));
                }
                b.equal("div(H) from lattice", "div(H) given", &div, given);
            }
            div
        }
    };
    b.assume(cite::picard_one());
    b.assume(cite::scalar_endomorphisms());
    b.assume(cite::l_equivalence());
    b.assume(cite::l_implies_t());
    if !input.t_iso {
        b.not_equal("hodge_isometry_established", "true", false, true);
        return Ok(b.finish(Verdict::Unknown));
    }
    b.assume(cite::hodge_isometry_established());
    b.equal("hodge_isometry_established", "true", true, true);
    let g_mod_4 = input.g % 4;
    let d_mod_8 = input.d % 8;
    let triggers = [
        ("g mod 4", "1", g_mod_4.to_string(), g_mod_4 == 1),
        ("d mod 8", "0", d_mod_8.to_string(), d_mod_8 == 0),
        ("div(H)", "2", div.to_string(), div == BigInt::from(2)),
    ];
    for (name, target, value, hit) in &triggers {
        if *hit {
            b.equal(name, target, value, target);
        } else {
            b.not_equal(name, target, value, target);
        }
    }
    if triggers.iter().any(|t| t.3) {
        b.assume(cite::derived_torelli_k3_2());
        Ok(b.finish(Verdict::DEquivalent))
    } else {
        b.assume(cite::twisted_derived_torelli_k3_2());
        Ok(b.finish(Verdict::TwistedDerivedEquivalent))
    }
}

/// Moduli spaces of sheaves on a K3 surface `S` with unimodular `NS(S)`.
pub fn certify_moduli_unimodular(
    s_ns: &Lattice,
    t_iso: bool,
    rank_t: usize,
) -> Result<EquivalenceCertificate> {
    let inputs =
        json!({"mode": "moduli", "ns": lattice_to_json(s_ns), "t_iso": t_iso, "rank_t": rank_t});
    let mut b = Builder::new(&inputs);
    if rank_t == 4 {
        return Err(reject(
            "rank(T) = 4 means Picard rank 18, which is excluded",
        ));
    }
    b.not_equal("rank(T)", "4", rank_t, 4);
    b.assume(cite::scalar_endomorphisms());
    b.assume(cite::picard_not_18());
    b.assume(cite::l_equivalence());
    if !t_iso {
        b.not_equal("hodge_isometry_established", "true", false, true);
        return Ok(b.finish(Verdict::Unknown));
    }
    b.assume(cite::hodge_isometry_established());
    b.equal("hodge_isometry_established", "true", true, true);
    let disc = s_ns.discriminant();
    if disc.is_one() {
        b.equal("disc(NS(S))", "1", &disc, 1);
        b.assume(cite::moduli_birationality());
        b.assume(cite::birational_implies_derived());
        Ok(b.finish(Verdict::Birational))
    } else {
        b.not_equal("disc(NS(S))", "1", &disc, 1);
        Ok(b.finish(Verdict::Unknown))
    }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("certificate inputs are missing \"{key}\"")))
}

fn get_u64(obj: &Map<String, Value>, key: &str) -> Result<u64> {
    get(obj, key)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be a non-negative integer")))
}

fn get_bool(obj: &Map<String, Value>, key: &str) -> Result<bool> {
    get(obj, key)?
        .as_bool()
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be a boolean")))
}

/// Runs the pipeline named by `"mode"` (`t`, `k3`, `hk4` or `moduli`).
pub fn certify_from_inputs(inputs: &Value) -> Result<EquivalenceCertificate> {
    let obj = inputs
        .as_object()
        .ok_or_else(|| Error::Parse("certificate inputs must be a JSON object".into()))?;
    let mode = get(obj, "mode")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"mode\" must be a string".into()))?;
    match mode {
        "t" => certify_t_implies_d(
            &model_from_json(get(obj, "t_x")?)?,
            &model_from_json(get(obj, "t_y")?)?,
        ),
        "k3" if obj.contains_key("x") => certify_l_implies_d_models(
            &k3_model_from_json(get(obj, "x")?)?,
            &k3_model_from_json(get(obj, "y")?)?,
        ),
        "k3" => certify_l_implies_d(
            &model_from_json(get(obj, "t_x")?)?,
            &model_from_json(get(obj, "t_y")?)?,
        ),
        "hk4" => {
            let polarization = match obj.get("polarization") {
                None | Some(Value::Null) => None,
                Some(p) => {
                    let p = p
                        .as_object()
                        .ok_or_else(|| Error::Parse("\"polarization\" must be an object".into()))?;
                    Some(Polarization {
                        lattice: lattice_from_json(get(p, "lattice")?)?,
                        vector: int_vector_from_json(get(p, "vector")?)?,
                    })
                }
            };
            let div_h = match obj.get("div_h") {
                None | Some(Value::Null) => None,
                Some(_) => Some(get_u64(obj, "div_h")?),
            };
            certify_hk_fourfold(&HkFourfoldInput {
                t_iso: get_bool(obj, "t_iso")?,
                g: get_u64(obj, "g")?,
                d: get_u64(obj, "d")?,
                div_h,
                polarization,
            })
        }
        "moduli" => {
            let rank_t = usize::try_from(get_u64(obj, "rank_t")?)
                .map_err(|_| Error::Parse("\"rank_t\" is too large".into()))?;
            certify_moduli_unimodular(
                &lattice_from_json(get(obj, "ns")?)?,
                get_bool(obj, "t_iso")?,
                rank_t,
            )
        }
        other => Err(Error::Parse(format!(
            "unknown certification mode `{other}`"
        ))),
    }
}
