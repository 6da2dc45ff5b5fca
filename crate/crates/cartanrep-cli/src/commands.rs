//! Implementations behind the CLI subcommands. Every command produces a JSON
//! value plus a pass flag; a false flag maps to exit code 1 in the caller.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use cartanrep::algebra::{AlgebraKind, AlgebraSpec};
use cartanrep::cartan::CartanError;
use cartanrep::construct;
use cartanrep::fixtures::{self, Problem, ProblemError};
use cartanrep::functors::{self, FunctorsError};
use cartanrep::linalg::LinalgError;
use cartanrep::pimod::{self, PimodError};
use cartanrep::rep::{self, RepError, Representation};
use cartanrep::roots::{self, RootsError};
use cartanrep::{FieldDescriptor, Scalar};
use serde_json::{json, Value};
use thiserror::Error;

use crate::{
    AlgebraAction, BuildKind, CartanAction, Cli, Command, Kind, ModuleAction, RootsAction,
};

#[derive(Debug, Error)]
pub enum CmdError {
    #[error("{0}")]
    Msg(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Functors(#[from] FunctorsError),
    #[error(transparent)]
    Pimod(#[from] PimodError),
}

/// Report payload plus whether the command's check succeeded.
#[derive(Debug)]
pub struct Outcome {
    pub value: Value,
    pub pass: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, pass: true }
    }
}

/// Instantiates a body once per concrete scalar type and selects at runtime
/// from the field descriptor.
macro_rules! with_field {
    ($field:expr, $S:ident => $body:expr) => {
        match $field {
            FieldDescriptor::Rationals => {
                type $S = cartanrep::Q;
                $body
            }
            FieldDescriptor::PrimeField(_) => {
                type $S = cartanrep::Fp;
                $body
            }
        }
    };
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, CmdError> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Cartan {
            action: CartanAction::Check { problem },
        } => cartan_check(problem, field),
        Command::Roots {
            action: RootsAction::List { problem },
        } => roots_list(problem, field),
        Command::Algebra {
            action:
                AlgebraAction::Info {
                    problem,
                    kind,
                    relations,
                },
        } => algebra_info(problem, field, *kind, *relations),
        Command::Module { action } => match action {
            ModuleAction::Build {
                problem,
                kind,
                vertex,
                algebra,
            } => module_build(problem, field, *kind, *vertex, *algebra),
            ModuleAction::Validate {
                problem,
                module,
                algebra,
            } => module_validate(problem, field, module, *algebra),
        },
        Command::Hom {
            problem,
            m,
            n,
            algebra,
        } => hom_cmd(problem, field, m, n, *algebra),
        Command::Ext { problem, m, n, pi } => ext_cmd(problem, field, m, n, *pi),
        Command::TauOrbit {
            problem,
            vertex,
            cap,
        } => tau_orbit_cmd(problem, field, *vertex, *cap),
        Command::Classify { problem } => classify_cmd(problem, field),
        Command::GpCheck { problem, module } => gp_check_cmd(problem, field, module),
        Command::Verify { suite } => crate::verify::run_suite(suite, cli.seed),
    }
}

/// Reads problem text from a file path or a named preset.
fn problem_text(arg: &str) -> Result<String, CmdError> {
    if Path::new(arg).exists() {
        return Ok(fs::read_to_string(arg)?);
    }
    if let Some(text) = fixtures::source(arg) {
        return Ok(text.to_string());
    }
    Err(CmdError::Msg(format!(
        "no such file or preset '{arg}' (presets: {})",
        fixtures::NAMES.join(", ")
    )))
}

fn parse_with_field(text: &str, field: Option<&str>) -> Result<Problem, ProblemError> {
    let mut problem: Problem = text.parse()?;
    if let Some(f) = field {
        problem.field = fixtures::parse_field(f)?;
    }
    Ok(problem)
}

fn load_problem(arg: &str, field: Option<&str>) -> Result<Problem, CmdError> {
    Ok(parse_with_field(&problem_text(arg)?, field)?)
}

fn load_module<S: Scalar>(
    path: &str,
    spec: &Arc<AlgebraSpec>,
    field: FieldDescriptor,
) -> Result<Representation<S>, CmdError> {
    let text = fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    Ok(Representation::from_json(spec.clone(), &v, field)?)
}

fn vertex_index(vertex: usize, n: usize) -> Result<usize, CmdError> {
    if vertex == 0 || vertex > n {
        return Err(CmdError::Msg(format!(
            "vertex {vertex} out of range 1..={n}"
        )));
    }
    Ok(vertex - 1)
}

fn kind_label(kind: Kind) -> &'static str {
    match kind {
        Kind::H => "h",
        Kind::Pi => "pi",
    }
}

pub fn cartan_check(arg: &str, field: Option<&str>) -> Result<Outcome, CmdError> {
    let text = problem_text(arg)?;
    let problem = match parse_with_field(&text, field) {
        Ok(p) => p,
        Err(e) => {
            return Ok(Outcome {
                value: json!({ "valid": false, "error": e.to_string() }),
                pass: false,
            });
        }
    };
    let data = &problem.data;
    let cartan = data.cartan();
    let n = cartan.n();
    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| cartan.c(i, j)).collect())
        .collect();
    let symmetrizer: Vec<i64> = (0..n).map(|i| data.c(i)).collect();
    let minimal = cartan
        .minimal_symmetrizer()
        .expect("validated data admits a symmetrizer");
    let edges: Vec<Value> = cartan
        .edges()
        .into_iter()
        .map(|(i, j)| {
            json!({
                "pair": [i + 1, j + 1],
                "c": [cartan.c(i, j), cartan.c(j, i)],
                "g": data.g(i, j),
                "f": [data.f(i, j), data.f(j, i)],
                "k": data.k(i, j),
            })
        })
        .collect();
    let components: Vec<Value> = data
        .component_types()
        .into_iter()
        .map(|(vertices, ty)| {
            json!({
                "vertices": vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "type": ty.map(|t| t.to_string()),
            })
        })
        .collect();
    let sinks: Vec<usize> = (0..n)
        .filter(|&i| problem.omega.is_sink(i, cartan))
        .map(|i| i + 1)
        .collect();
    let sources: Vec<usize> = (0..n)
        .filter(|&i| problem.omega.is_source(i, cartan))
        .map(|i| i + 1)
        .collect();
    Ok(Outcome::ok(json!({
        "valid": true,
        "n": n,
        "cartan": matrix,
        "symmetrizer": symmetrizer,
        "symmetrizer_is_minimal": symmetrizer == minimal.as_slice(),
        "positive_definite": data.is_positive_definite(),
        "dynkin": data.dynkin_type().map(|t| t.to_string()),
        "components": components,
        "edges": edges,
        "orientation": problem.omega.pairs().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
        "sinks": sinks,
        "sources": sources,
        "field": problem.field.to_json(),
    })))
}

pub fn roots_list(arg: &str, field: Option<&str>) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let mut roots = roots::positive_roots(&problem.data, &problem.omega)?;
    roots.sort();
    Ok(Outcome::ok(json!({
        "type": problem.data.dynkin_type().map(|t| t.to_string()),
        "count": roots.len(),
        "roots": roots,
    })))
}

pub fn algebra_info(
    arg: &str,
    field: Option<&str>,
    kind: Kind,
    relations: bool,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(kind.into());
    let data = spec.data();
    let vertices: Vec<Value> = (0..spec.n())
        .map(|i| {
            json!({
                "vertex": i + 1,
                "loop": format!("eps:{}", i + 1),
                "nilpotency": data.c(i),
            })
        })
        .collect();
    let arrows: Vec<Value> = spec
        .arrows()
        .into_iter()
        .map(|a| {
            json!({
                "name": a.name(),
                "source": a.source + 1,
                "target": a.target + 1,
                "copy": a.copy,
            })
        })
        .collect();
    let mut value = json!({
        "kind": kind_label(kind),
        "vertices": vertices,
        "arrows": arrows,
    });
    if relations {
        value["relations"] = json!(spec.relation_strings());
    }
    Ok(Outcome::ok(value))
}

pub fn module_build(
    arg: &str,
    field: Option<&str>,
    kind: BuildKind,
    vertex: usize,
    algebra: Kind,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(algebra.into());
    let i = vertex_index(vertex, spec.n())?;
    if algebra == Kind::Pi && matches!(kind, BuildKind::P | BuildKind::I) {
        return Err(CmdError::Msg(
            "projectives and injectives are built over the plain algebra; pass --algebra h".into(),
        ));
    }
    let value = with_field!(problem.field, S => {
        let m: Representation<S> = match kind {
            BuildKind::E => construct::generalized_simple(&spec, i, problem.field),
            BuildKind::S => construct::simple(&spec, i, problem.field),
            BuildKind::P => construct::projective(&spec, i, problem.field),
            BuildKind::I => construct::injective(&spec, i, problem.field),
        };
        m.to_json()
    });
    Ok(Outcome::ok(value))
}

pub fn module_validate(
    arg: &str,
    field: Option<&str>,
    module_path: &str,
    algebra: Kind,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(algebra.into());
    let (value, pass) = with_field!(problem.field, S => {
        let m: Representation<S> =
            load_module(module_path, &spec, problem.field)?;
        let violations = m.validate();
        let pass = violations.is_empty();
        let value = json!({
            "valid": pass,
            "algebra": kind_label(algebra),
            "dims": m.dims(),
            "total_dim": m.total_dim(),
            "locally_free": m.is_locally_free(),
            "rank": m.rank_vector(),
            "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        (value, pass)
    });
    Ok(Outcome { value, pass })
}

pub fn hom_cmd(
    arg: &str,
    field: Option<&str>,
    m_path: &str,
    n_path: &str,
    algebra: Kind,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(algebra.into());
    let value = with_field!(problem.field, S => {
        let m: Representation<S> = load_module(m_path, &spec, problem.field)?;
        let n: Representation<S> = load_module(n_path, &spec, problem.field)?;
        json!({
            "algebra": kind_label(algebra),
            "dim": rep::hom_dim(&m, &n)?,
            "m_dims": m.dims(),
            "n_dims": n.dims(),
        })
    });
    Ok(Outcome::ok(value))
}

pub fn ext_cmd(
    arg: &str,
    field: Option<&str>,
    m_path: &str,
    n_path: &str,
    pi: bool,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let kind = if pi { AlgebraKind::Pi } else { AlgebraKind::H };
    let spec = problem.spec(kind);
    let value = with_field!(problem.field, S => {
        let m: Representation<S> = load_module(m_path, &spec, problem.field)?;
        let n: Representation<S> = load_module(n_path, &spec, problem.field)?;
        if pi {
            let forward = pimod::q_complex(&m, &n)?;
            let backward = pimod::q_complex(&n, &m)?;
            let non_dynkin = spec
                .data()
                .component_types()
                .iter()
                .all(|(_, ty)| ty.is_none());
            json!({
                "hom": forward.hom_dim(),
                "ext1": forward.ext1_dim(),
                "ext2": if non_dynkin { json!(forward.cokernel_f_dim()) } else { Value::Null },
                "symmetric": forward.ext1_dim() == backward.ext1_dim(),
            })
        } else {
            let hom = rep::hom_dim(&m, &n)?;
            let forward = rep::ext1_dim(&m, &n)?;
            let backward = rep::ext1_dim(&n, &m)?;
            json!({
                "hom": hom,
                "ext1": forward,
                "ext2": Value::Null,
                "symmetric": forward == backward,
            })
        }
    });
    Ok(Outcome::ok(value))
}

pub fn tau_orbit_cmd(
    arg: &str,
    field: Option<&str>,
    vertex: usize,
    cap: usize,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(AlgebraKind::H);
    let i = vertex_index(vertex, spec.n())?;
    let value = with_field!(problem.field, S => {
        let orbit = functors::tau_orbit::<S>(&spec, i, cap, problem.field)?;
        let items: Vec<Value> = orbit
            .items
            .iter()
            .enumerate()
            .map(|(k, (m, rank))| {
                json!({
                    "index": k,
                    "rank": rank,
                    "dims": m.dims(),
                    "total_dim": m.total_dim(),
                })
            })
            .collect();
        json!({
            "vertex": vertex,
            "cap": cap,
            "terminated": orbit.terminated,
            "length": items.len(),
            "items": items,
        })
    });
    Ok(Outcome::ok(value))
}

pub fn classify_cmd(arg: &str, field: Option<&str>) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(AlgebraKind::H);
    let set = functors::classify_tau_locally_free(&spec)?;
    let vectors: Vec<&Vec<i64>> = set.iter().collect();
    Ok(Outcome::ok(json!({
        "type": problem.data.dynkin_type().map(|t| t.to_string()),
        "count": vectors.len(),
        "rank_vectors": vectors,
    })))
}

pub fn gp_check_cmd(
    arg: &str,
    field: Option<&str>,
    module_path: &str,
) -> Result<Outcome, CmdError> {
    let problem = load_problem(arg, field)?;
    let spec = problem.spec(AlgebraKind::H);
    with_field!(problem.field, S => {
        let m: Representation<S> = load_module(module_path, &spec, problem.field)?;
        match functors::is_gorenstein_projective(&m) {
            Ok(gp) => Ok(Outcome::ok(json!({
                "gorenstein_projective": gp,
                "criteria_agree": true,
            }))),
            Err(FunctorsError::GpDisagreement {
                in_maps_injective,
                coxeter_zero,
            }) => Ok(Outcome {
                value: json!({
                    "gorenstein_projective": Value::Null,
                    "criteria_agree": false,
                    "in_maps_injective": in_maps_injective,
                    "coxeter_plus_zero": coxeter_zero,
                }),
                pass: false,
            }),
            Err(e) => Err(e.into()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_check_echoes_constants_for_presets() {
        let out = cartan_check("d962", None).unwrap();
        assert!(out.pass);
        let v = &out.value;
        assert_eq!(v["valid"], json!(true));
        assert_eq!(v["symmetrizer"], json!([9, 6, 2]));
        assert_eq!(v["symmetrizer_is_minimal"], json!(true));
        assert_eq!(v["dynkin"], Value::Null);
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges[0]["pair"], json!([1, 2]));
        assert_eq!(edges[0]["g"], json!(2));
        assert_eq!(edges[0]["f"], json!([2, 3]));
        assert_eq!(edges[1]["pair"], json!([2, 3]));
        assert_eq!(edges[1]["g"], json!(3));
        assert_eq!(edges[1]["f"], json!([1, 3]));
    }

    #[test]
    fn cartan_check_flags_invalid_input() {
        let dir = std::env::temp_dir().join(format!("cartanrep-cmd-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad-cartan.json");
        fs::write(&path, r#"{"cartan": [[2, -1], [0, 2]]}"#).unwrap();
        let out = cartan_check(path.to_str().unwrap(), None).unwrap();
        assert!(!out.pass);
        assert_eq!(out.value["valid"], json!(false));
        assert!(out.value["error"].as_str().unwrap().len() > 1);
    }

    #[test]
    fn unknown_problem_is_an_error() {
        let err = cartan_check("definitely-not-a-preset", None).unwrap_err();
        assert!(err.to_string().contains("presets"));
    }

    #[test]
    fn roots_list_counts_match_types() {
        let out = roots_list("b2", None).unwrap();
        assert_eq!(out.value["count"], json!(4));
        assert_eq!(out.value["type"], json!("B2"));
        let out = roots_list("g2", None).unwrap();
        assert_eq!(out.value["count"], json!(6));
        assert!(roots_list("affine_a1", None).is_err());
    }

    #[test]
    fn algebra_info_counts_arrows_both_kinds() {
        let h = algebra_info("d962", None, Kind::H, false).unwrap().value;
        assert_eq!(h["arrows"].as_array().unwrap().len(), 5);
        let pi = algebra_info("d962", None, Kind::Pi, true).unwrap().value;
        assert_eq!(pi["arrows"].as_array().unwrap().len(), 10);
        assert!(!pi["relations"].as_array().unwrap().is_empty());
    }

    #[test]
    fn module_build_rejects_pi_projectives() {
        let err = module_build("b2", None, BuildKind::P, 1, Kind::Pi).unwrap_err();
        assert!(err.to_string().contains("--algebra h"));
        let out = module_build("b2", None, BuildKind::P, 2, Kind::H).unwrap();
        assert_eq!(out.value["dims"], json!([2, 1]));
    }

    #[test]
    fn vertex_bounds_are_one_based() {
        assert!(module_build("b2", None, BuildKind::E, 0, Kind::H).is_err());
        assert!(module_build("b2", None, BuildKind::E, 3, Kind::H).is_err());
        assert!(module_build("b2", None, BuildKind::E, 2, Kind::H).is_ok());
    }

    #[test]
    fn field_override_switches_scalars() {
        let out = module_build("b2", Some("fp:7"), BuildKind::P, 1, Kind::H).unwrap();
        assert_eq!(
            out.value["eps"]["1"]["field"],
            json!({"kind": "fp", "p": "7"})
        );
        assert!(module_build("b2", Some("fp:6"), BuildKind::P, 1, Kind::H).is_err());
    }

    #[test]
    fn classify_matches_root_count() {
        let out = classify_cmd("c3", None).unwrap();
        assert_eq!(out.value["count"], json!(9));
        assert_eq!(out.value["rank_vectors"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn tau_orbit_reports_cap_hits() {
        let out = tau_orbit_cmd("affine_a1", None, 1, 4).unwrap();
        assert!(out.pass, "hitting the cap is reported, not failed");
        assert_eq!(out.value["terminated"], json!(false));
        assert_eq!(out.value["length"], json!(4));
        let out = tau_orbit_cmd("b2", None, 1, 64).unwrap();
        assert_eq!(out.value["terminated"], json!(true));
    }
}
