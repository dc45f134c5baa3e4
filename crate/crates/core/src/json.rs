//! JSON documents for lattices, models and verdicts.
//!
//! Integers are JSON numbers when they fit in 53 bits and decimal strings
//! otherwise; rationals are always `"p/q"` strings. Objects are emitted
//! with sorted keys, so serialization is byte-for-byte deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hodge::{HodgeLatticeModel, TwistDiscriminantCheck, TwistEquivalence};
use crate::isometry::{DiscFormVerdict, EmbeddingVerdict, GenusInvariants, IsometryVerdict};
use crate::k3::{k3n_ambient, DiscCheck, HyperkahlerModel, K3SurfaceModel};
use crate::lattice::{catalog, Lattice, Signature};
use crate::linalg::{format_rational, parse_rational, IntMatrix, RatMatrix};

const SAFE_INTEGER: i64 = (1 << 53) - 1;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE_INTEGER => Value::from(v),
        _ => Value::from(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_err(format!("expected an integer, got {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("expected an integer, got \"{s}\""))),
        other => Err(parse_err(format!("expected an integer, got {other}"))),
    }
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::from(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| parse_err(format!("bad rational \"{s}\"")))
        }
        Value::Number(_) => int_from_json(v).map(BigRational::from_integer),
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

pub fn int_vector_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn int_vector_from_json(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of integers"))?
        .iter()
        .map(int_from_json)
        .collect()
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| int_vector_to_json(m.row(i)))
            .collect(),
    )
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("expected a matrix (array of rows)"))?
        .iter()
        .map(int_vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

pub fn rat_matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn rat_matrix_from_json(v: &Value) -> Result<RatMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("expected a matrix (array of rows)"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("expected a matrix row"))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows)
}

pub fn signature_to_json(s: Signature) -> Value {
    json!([s.positive, s.negative])
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(format!("{what} must be a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("{what} is missing \"{key}\"")))
}

fn bool_field(obj: &Map<String, Value>, key: &str, default: bool) -> Result<bool> {
    match obj.get(key) {
        None => Ok(default),
        Some(Value::Bool(b)) => Ok(*b),
        Some(other) => Err(parse_err(format!(
            "\"{key}\" must be a boolean, got {other}"
        ))),
    }
}

/// `{"gram": [[..]], "name": ..}`; the name is omitted when absent.
pub fn lattice_to_json(l: &Lattice) -> Value {
    let mut obj = Map::new();
    obj.insert("gram".into(), int_matrix_to_json(l.gram()));
    if let Some(name) = l.label() {
        obj.insert("name".into(), Value::from(name));
    }
    Value::Object(obj)
}

/// Accepts `{"gram": ..}` (optionally named), `{"name": <catalog name>}`,
/// a bare Gram matrix, or a string `"catalog:NAME"`.
pub fn lattice_from_json(v: &Value) -> Result<Lattice> {
    if v.is_array() {
        return Lattice::new(int_matrix_from_json(v)?);
    }
    if let Value::String(s) = v {
        return match s.strip_prefix("catalog:") {
            Some(name) => catalog(name),
            None => Err(parse_err(format!(
                "expected a lattice document or catalog:NAME, got \"{s}\""
            ))),
        };
    }
    let obj = object(v, "lattice document")?;
    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => return Err(parse_err(format!("\"name\" must be a string, got {other}"))),
    };
    match (obj.get("gram"), name) {
        (Some(gram), name) => {
            let l = Lattice::new(int_matrix_from_json(gram)?)?;
            Ok(match name {
                Some(n) => l.with_label(n),
                None => l,
            })
        }
        (None, Some(name)) => catalog(&name),
        (None, None) => Err(parse_err(
            "lattice document needs \"gram\" or a catalog \"name\"",
        )),
    }
}

pub fn model_to_json(m: &HodgeLatticeModel) -> Value {
    json!({
        "lattice": lattice_to_json(m.lattice()),
        "endo_generator": rat_matrix_to_json(m.generator()),
        "irreducible": m.irreducible(),
        "k3_type": m.k3_type(),
    })
}

/// `{"lattice", "endo_generator"?, "irreducible"?, "k3_type"?}`; a missing
/// generator means `E = Q`, missing flags default to true.
pub fn model_from_json(v: &Value) -> Result<HodgeLatticeModel> {
    let obj = object(v, "model document")?;
    let lattice = lattice_from_json(field(obj, "lattice", "model document")?)?;
    let irreducible = bool_field(obj, "irreducible", true)?;
    let k3_type = bool_field(obj, "k3_type", true)?;
    match obj.get("endo_generator") {
        None | Some(Value::Null) => Ok(HodgeLatticeModel::with_rational_endomorphisms(lattice)
            .with_flags(irreducible, k3_type)),
        Some(g) => HodgeLatticeModel::new(lattice, rat_matrix_from_json(g)?, irreducible, k3_type),
    }
}

fn optional_generator(obj: &Map<String, Value>) -> Result<Option<RatMatrix>> {
    match obj.get("endo_generator") {
        None | Some(Value::Null) => Ok(None),
        Some(g) => rat_matrix_from_json(g).map(Some),
    }
}

pub fn k3_model_to_json(m: &K3SurfaceModel) -> Value {
    json!({
        "ambient": lattice_to_json(m.ambient()),
        "ns_basis": int_matrix_to_json(m.ns().basis()),
        "endo_generator": rat_matrix_to_json(m.t_model().generator()),
    })
}

/// `{"ambient"?, "ns_basis", "endo_generator"?}`; the ambient defaults to
/// `Λ_K3`.
pub fn k3_model_from_json(v: &Value) -> Result<K3SurfaceModel> {
    let obj = object(v, "K3 model document")?;
    let ambient = match obj.get("ambient") {
        None => catalog("LambdaK3")?,
        Some(a) => lattice_from_json(a)?,
    };
    let ns = int_matrix_from_json(field(obj, "ns_basis", "K3 model document")?)?;
    K3SurfaceModel::new(ambient, ns, optional_generator(obj)?)
}

pub fn hk_model_to_json(m: &HyperkahlerModel) -> Value {
    let mut v = json!({
        "ambient": lattice_to_json(m.ambient()),
        "ns_basis": int_matrix_to_json(m.ns().basis()),
        "endo_generator": rat_matrix_to_json(m.t_model().generator()),
    });
    if let Some(n) = m.n() {
        v["n"] = Value::from(n);
    }
    v
}

/// `{"ambient"? , "n"?, "ns_basis", "endo_generator"?}`; without an
/// ambient, `n` selects the conventional K3^[n] lattice.
pub fn hk_model_from_json(v: &Value) -> Result<HyperkahlerModel> {
    let obj = object(v, "hyperkähler model document")?;
    let n = match obj.get("n") {
        None => None,
        Some(x) => Some(
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| parse_err("\"n\" must be a small positive integer"))?,
        ),
    };
    let ambient = match (obj.get("ambient"), n) {
        (Some(a), _) => lattice_from_json(a)?,
        (None, Some(n)) => k3n_ambient(n)?,
        (None, None) => return Err(parse_err("hyperkähler model needs \"ambient\" or \"n\"")),
    };
    let ns = int_matrix_from_json(field(obj, "ns_basis", "hyperkähler model document")?)?;
    HyperkahlerModel::new(ambient, ns, optional_generator(obj)?, n)
}

/// Summary used by `info`.
pub fn lattice_info(l: &Lattice) -> Value {
    let mut v = json!({
        "rank": l.rank(),
        "disc": int_to_json(&l.discriminant()),
        "det": int_to_json(&l.determinant()),
        "signature": signature_to_json(l.signature()),
        "even": true,
        "unimodular": l.is_unimodular(),
        "gram": int_matrix_to_json(l.gram()),
    });
    if let Some(name) = l.label() {
        v["name"] = Value::from(name);
    }
    v
}

pub fn genus_to_json(g: &GenusInvariants) -> Value {
    json!({
        "rank": g.rank,
        "signature": signature_to_json(g.signature),
        "discriminant": int_to_json(&g.discriminant),
        "invariant_factors": int_vector_to_json(&g.invariant_factors),
        "fingerprint": match &g.fingerprint {
            Some(f) => Value::Array(f.iter().map(rational_to_json).collect()),
            None => Value::Null,
        },
        "fingerprint_omitted": g.fingerprint.is_none(),
        "fingerprint_bound": g.fingerprint_bound,
    })
}

pub fn isometry_verdict_to_json(v: &IsometryVerdict) -> Value {
    let mut obj = json!({ "state": v.state() });
    if let Some(reason) = v.reason() {
        obj["reason"] = Value::from(reason);
    }
    if let Some(w) = v.witness() {
        obj["witness"] = int_matrix_to_json(w);
    }
    obj
}

pub fn disc_form_verdict_to_json(v: &DiscFormVerdict) -> Value {
    match v {
        DiscFormVerdict::Isomorphic { images } => json!({
            "state": v.state(),
            "images": images.iter().map(|i| int_vector_to_json(i)).collect::<Vec<_>>(),
        }),
        DiscFormVerdict::NotIsomorphic { reason } | DiscFormVerdict::Unknown { reason } => {
            json!({ "state": v.state(), "reason": reason })
        }
    }
}

pub fn embedding_verdict_to_json(v: &EmbeddingVerdict) -> Value {
    json!({
        "embeds": v.embeds(),
        "state": if v.embeds() { "Embeds" } else { "Inconclusive" },
        "reason": v.reason(),
    })
}

pub fn twist_check_to_json(c: &TwistDiscriminantCheck) -> Value {
    json!({
        "disc_original": int_to_json(&c.disc_original),
        "disc_twisted": int_to_json(&c.disc_twisted),
        "norm": rational_to_json(&c.norm),
        "abs_norm": rational_to_json(&c.norm.abs()),
        "m": c.m,
        "predicted": rational_to_json(&c.predicted),
        "holds": BigRational::from_integer(c.disc_twisted.clone()) == c.predicted,
    })
}

pub fn twist_equivalence_to_json(t: &TwistEquivalence) -> Value {
    match t {
        TwistEquivalence::Equivalent(h) => {
            json!({ "state": t.state(), "witness": int_matrix_to_json(h) })
        }
        TwistEquivalence::NotEquivalent(r) | TwistEquivalence::Unknown(r) => {
            json!({ "state": t.state(), "reason": r })
        }
    }
}

pub fn disc_check_to_json(c: &DiscCheck) -> Value {
    json!({
        "status": c.status(),
        "scope": c.scope(),
        "disc_x": int_to_json(&c.disc_x),
        "disc_y": int_to_json(&c.disc_y),
    })
}

/// Compact serialization with sorted keys.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}
