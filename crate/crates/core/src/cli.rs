//! Batch JSON front end. Every invocation writes exactly one JSON document
//! to standard output.
//!
//! Exit codes: 0 success, 2 domain rejection, 3 internal assertion
//! failure, 64 usage error, 65 unreadable or malformed input.

use std::path::Path;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::certify::{certify_from_inputs, replay_json};
use crate::error::{Error, Result};
use crate::hodge::HodgeLatticeModel;
use crate::isometry::{
    embeds_primitively_in_k3_lattice, genus_invariants, lattices_isometric, SearchBounds,
};
use crate::json::{
    embedding_verdict_to_json, genus_to_json, hk_model_from_json, int_matrix_from_json,
    int_to_json, isometry_verdict_to_json, k3_model_from_json, lattice_from_json, lattice_info,
    lattice_to_json, model_from_json, rat_matrix_from_json, rational_to_json, twist_check_to_json,
};
use crate::k3::glue_index;
use crate::lattice::{Lattice, Sublattice};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// A single JSON document, newline terminated.
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "hodgelat",
    version,
    about = "Exact lattice and Hodge-lattice computations with JSON I/O"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, discriminant, signature and Gram matrix of a lattice.
    Info { lattice: String },
    /// Genus invariants: signature, discriminant group and form.
    Genus {
        lattice: String,
        #[arg(long)]
        fingerprint_bound: Option<u64>,
    },
    /// Twist a model by an endomorphism and check the discriminant law.
    Twist {
        model: String,
        #[arg(long)]
        phi: String,
    },
    /// Decide whether two lattices are isometric.
    Isom {
        a: String,
        b: String,
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        fingerprint_bound: Option<u64>,
    },
    /// Primitive embedding predicate for the K3 lattice.
    EmbedK3 { lattice: String },
    /// Glue index of two orthogonal sublattices; `--t` defaults to the
    /// orthogonal complement of `--s`.
    Glue {
        ambient: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: Option<String>,
    },
    /// Build an equivalence certificate.
    Certify {
        #[arg(long, value_enum)]
        mode: Mode,
        inputs: String,
    },
    /// Admissible scalar twists with a given discriminant.
    EnumerateTwists {
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
    },
    /// K3 and hyperkähler model documents.
    K3 {
        #[command(subcommand)]
        action: K3Action,
    },
    /// Re-check a certificate.
    Replay { certificate: String },
}

#[derive(Subcommand, Debug)]
enum K3Action {
    /// Validate a model and report its NS/T decomposition.
    Validate { model: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    K3,
    Hk4,
    Moduli,
    T,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::K3 => "k3",
            Mode::Hk4 => "hk4",
            Mode::Moduli => "moduli",
            Mode::T => "t",
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: EXIT_OK,
                    stdout: document(&json!({ "usage": text })),
                    stderr: String::new(),
                },
                _ => CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: document(&json!({ "error": "usage", "message": first_line(&text) })),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, v)) => CommandResult {
            exit_code: code,
            stdout: document(&v),
            stderr: String::new(),
        },
        Err(e) => CommandResult {
            exit_code: e.exit_code(),
            stdout: document(&json!({ "error": e.kind(), "message": e.to_string() })),
            stderr: format!("hodgelat: {e}\n"),
        },
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn document(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Inline JSON (starting with `{`, `[` or `"`), `catalog:NAME`, or a path.
fn load(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    if arg.starts_with("catalog:") {
        return Ok(Value::String(arg.to_string()));
    }
    let text = if trimmed.starts_with(['{', '[', '"']) {
        trimmed.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn load_lattice(arg: &str) -> Result<Lattice> {
    lattice_from_json(&load(arg)?)
}

/// A model document, or a bare lattice taken with `E = Q`.
fn load_model(arg: &str) -> Result<HodgeLatticeModel> {
    let v = load(arg)?;
    let is_model = v.as_object().is_some_and(|o| o.contains_key("lattice"));
    if is_model {
        model_from_json(&v)
    } else {
        Ok(HodgeLatticeModel::with_rational_endomorphisms(
            lattice_from_json(&v)?,
        ))
    }
}

fn bounds(bound: Option<u32>, fingerprint_bound: Option<u64>) -> SearchBounds {
    let mut b = SearchBounds::from_env();
    if let Some(n) = bound {
        b.entry_bound = n;
    }
    if let Some(f) = fingerprint_bound {
        b.fingerprint_bound = f;
    }
    b
}

fn dispatch(command: Command) -> Result<(i32, Value)> {
    let ok = |v: Value| Ok((EXIT_OK, v));
    match command {
        Command::Info { lattice } => ok(lattice_info(&load_lattice(&lattice)?)),
        Command::Genus {
            lattice,
            fingerprint_bound,
        } => {
            let b = bounds(None, fingerprint_bound);
            ok(genus_to_json(&genus_invariants(
                &load_lattice(&lattice)?,
                b.fingerprint_bound,
            )))
        }
        Command::Twist { model, phi } => {
            let model = load_model(&model)?;
            let phi = model.is_in_f(&rat_matrix_from_json(&load(&phi)?)?)?;
            let twisted = model.twist(&phi)?;
            let check = model.verify_twist_discriminant(&phi)?;
            ok(json!({
                "lattice": lattice_to_json(twisted.lattice()),
                "minimal_polynomial": phi.minimal_polynomial().to_string(),
                "twist_discriminant_check": twist_check_to_json(&check),
            }))
        }
        Command::Isom {
            a,
            b,
            bound,
            fingerprint_bound,
        } => {
            let bounds = bounds(bound, fingerprint_bound);
            let verdict = lattices_isometric(&load_lattice(&a)?, &load_lattice(&b)?, bounds);
            let mut v = isometry_verdict_to_json(&verdict);
            v["search_bound"] = json!(bounds.entry_bound);
            v["fingerprint_bound"] = json!(bounds.fingerprint_bound);
            ok(v)
        }
        Command::EmbedK3 { lattice } => ok(embedding_verdict_to_json(
            &embeds_primitively_in_k3_lattice(&load_lattice(&lattice)?),
        )),
        Command::Glue { ambient, s, t } => {
            let h = load_lattice(&ambient)?;
            let s = Sublattice::new(h.clone(), int_matrix_from_json(&load(&s)?)?)?;
            let t = match t {
                Some(t) => Sublattice::new(h.clone(), int_matrix_from_json(&load(&t)?)?)?,
                None => s.orthogonal_complement()?,
            };
            let index = glue_index(&h, &s, &t)?;
            let (ls, lt) = (s.lattice()?, t.lattice()?);
            ok(json!({
                "glue_index": int_to_json(&index),
                "disc_ambient": int_to_json(&h.discriminant()),
                "disc_s": int_to_json(&ls.discriminant()),
                "disc_t": int_to_json(&lt.discriminant()),
                "t_basis": crate::json::int_matrix_to_json(t.basis()),
            }))
        }
        Command::Certify { mode, inputs } => {
            let mut v = load(&inputs)?;
            let obj = v
                .as_object_mut()
                .ok_or_else(|| Error::Parse("certificate inputs must be a JSON object".into()))?;
            match obj.get("mode") {
                None => {
                    obj.insert("mode".into(), json!(mode.name()));
                }
                Some(m) if m == mode.name() => {}
                Some(m) => {
                    return Err(Error::Parse(format!(
                        "inputs declare mode {m} but --mode is {}",
                        mode.name()
                    )))
                }
            }
            ok(certify_from_inputs(&v)?.to_json())
        }
        Command::EnumerateTwists { model, disc } => {
            let model = load_model(&model)?;
            let target: BigInt = disc
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("--disc expects an integer, got `{disc}`")))?;
            let twists = model.enumerate_scalar_twists(&target)?;
            ok(json!({
                "disc": int_to_json(&target),
                "twists": twists.iter().map(rational_to_json).collect::<Vec<_>>(),
            }))
        }
        Command::K3 {
            action: K3Action::Validate { model },
        } => {
            let v = load(&model)?;
            let is_hk = v.as_object().is_some_and(|o| o.contains_key("n"));
            if is_hk {
                let m = hk_model_from_json(&v)?;
                ok(json!({
                    "kind": "hyperkahler",
                    "picard_rank": m.picard_rank(),
                    "ns": lattice_info(&m.ns_lattice()),
                    "transcendental": lattice_info(&m.t_lattice()),
                    "glue_index": int_to_json(&m.glue_index()?),
                    "glue_defect": int_to_json(&m.glue_defect()?),
                }))
            } else {
                let m = k3_model_from_json(&v)?;
                ok(json!({
                    "kind": "k3",
                    "picard_rank": m.picard_rank(),
                    "ns": lattice_info(&m.ns_lattice()),
                    "transcendental": lattice_info(&m.t_lattice()),
                    "glue_index": int_to_json(&m.glue_index()?),
                }))
            }
        }
        Command::Replay { certificate } => {
            let valid = replay_json(&load(&certificate)?)?;
            Ok((if valid { EXIT_OK } else { 2 }, json!({ "valid": valid })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["hodgelat"];
        argv.extend_from_slice(args);
        let r = run(argv);
        (r.exit_code, serde_json::from_str(&r.stdout).unwrap())
    }

    #[test]
    fn info_on_catalog() {
        let (code, v) = call(&["info", "catalog:U"]);
        assert_eq!(code, 0);
        assert_eq!(v["rank"], 2);
        assert_eq!(v["disc"], 1);
        assert_eq!(v["signature"], json!([1, 1]));
    }

    #[test]
    fn usage_and_parse_errors() {
        assert_eq!(call(&["frobnicate"]).0, 64);
        assert_eq!(call(&["info"]).0, 64);
        assert_eq!(call(&["info", "/nonexistent/file.json"]).0, 65);
        assert_eq!(call(&["info", "{\"gram\": [[1]]}"]).0, 2);
        let (code, v) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(v["usage"].is_string());
    }

    #[test]
    fn twist_by_two() {
        let (code, v) = call(&["twist", "catalog:U", "--phi", "[[2,0],[0,2]]"]);
        assert_eq!(code, 0);
        assert_eq!(v["lattice"]["gram"], json!([[0, 2], [2, 0]]));
        assert_eq!(v["twist_discriminant_check"]["holds"], true);
    }

    #[test]
    fn isometry_embeds_bound() {
        let (code, v) = call(&[
            "isom",
            "catalog:U",
            "{\"gram\": [[0,2],[2,0]]}",
            "--bound",
            "3",
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["state"], "NotIsometric");
        assert_eq!(v["reason"], "discriminant");
        assert_eq!(v["search_bound"], 3);
    }
}
