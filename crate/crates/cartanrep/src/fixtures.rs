//! Shipped problem presets and the JSON problem-file loader shared by the
//! command-line tool and the verification suite.
//!
//! A problem file is a JSON object
//!
//! ```text
//! {"cartan": [[...]], "symmetrizer": [...], "orientation": [[i,j],...], "field": "q"}
//! ```
//!
//! with 1-based vertices. The symmetrizer defaults to the minimal one, the
//! orientation to directing every edge from the larger vertex to the
//! smaller, and the field to the rationals.

use crate::algebra::{AlgebraKind, AlgebraSpec};
use crate::cartan::{CartanData, CartanError, CartanMatrix, Orientation, Symmetrizer};
use crate::linalg::{FieldDescriptor, LinalgError};
use serde_json::Value;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("problem file: {0}")]
    BadJson(String),
    #[error("no shipped problem named {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A parsed problem: the Cartan datum, an orientation, and the ground field.
#[derive(Debug, Clone)]
pub struct Problem {
    pub data: CartanData,
    pub omega: Orientation,
    pub field: FieldDescriptor,
}

impl Problem {
    /// The algebra presentation of the requested kind over this problem.
    pub fn spec(&self, kind: AlgebraKind) -> Arc<AlgebraSpec> {
        Arc::new(AlgebraSpec::new(
            kind,
            self.data.clone(),
            self.omega.clone(),
        ))
    }

    pub fn from_json(v: &Value) -> Result<Problem, ProblemError> {
        let rows = v
            .get("cartan")
            .and_then(Value::as_array)
            .ok_or_else(|| ProblemError::BadJson("cartan missing".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| ProblemError::BadJson("cartan row is not an array".into()))?
                    .iter()
                    .map(|e| {
                        e.as_i64()
                            .ok_or_else(|| ProblemError::BadJson(format!("bad entry {e}")))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        let cartan = CartanMatrix::new(rows)?;
        let data = match v.get("symmetrizer") {
            None | Some(Value::Null) => CartanData::with_minimal_symmetrizer(cartan)?,
            Some(sv) => {
                let d: Vec<i64> = sv
                    .as_array()
                    .ok_or_else(|| ProblemError::BadJson("symmetrizer is not an array".into()))?
                    .iter()
                    .map(|e| {
                        e.as_i64()
                            .ok_or_else(|| ProblemError::BadJson(format!("bad weight {e}")))
                    })
                    .collect::<Result<_, _>>()?;
                let sym = Symmetrizer::new(d, &cartan)?;
                CartanData::new(cartan, sym)?
            }
        };
        let omega = match v.get("orientation") {
            None | Some(Value::Null) => Orientation::default_for(data.cartan()),
            Some(ov) => {
                let pairs = ov
                    .as_array()
                    .ok_or_else(|| ProblemError::BadJson("orientation is not an array".into()))?
                    .iter()
                    .map(parse_pair)
                    .collect::<Result<Vec<_>, _>>()?;
                Orientation::new(pairs, data.cartan())?
            }
        };
        let field = match v.get("field") {
            None | Some(Value::Null) => FieldDescriptor::Rationals,
            Some(Value::String(s)) => parse_field(s)?,
            Some(fv) => FieldDescriptor::from_json(fv)?,
        };
        Ok(Problem { data, omega, field })
    }
}

impl std::str::FromStr for Problem {
    type Err = ProblemError;

    fn from_str(text: &str) -> Result<Problem, ProblemError> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| ProblemError::BadJson(format!("not valid JSON: {e}")))?;
        Problem::from_json(&v)
    }
}

fn parse_pair(v: &Value) -> Result<(usize, usize), ProblemError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| ProblemError::BadJson(format!("orientation pair {v} is not [i, j]")))?;
    let at = |k: usize| -> Result<usize, ProblemError> {
        let x = arr[k]
            .as_u64()
            .ok_or_else(|| ProblemError::BadJson(format!("bad vertex {}", arr[k])))?;
        if x == 0 {
            return Err(ProblemError::BadJson("vertices are 1-based".into()));
        }
        Ok((x - 1) as usize)
    };
    Ok((at(0)?, at(1)?))
}

/// Parses the field flag syntax `q` or `fp:P` with `P` prime.
pub fn parse_field(s: &str) -> Result<FieldDescriptor, ProblemError> {
    if s == "q" || s == "Q" {
        return Ok(FieldDescriptor::Rationals);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|e| ProblemError::BadJson(format!("bad modulus {p:?}: {e}")))?;
        return Ok(FieldDescriptor::new_prime_field(p)?);
    }
    Err(ProblemError::BadJson(format!(
        "unknown field {s:?}, expected q or fp:P"
    )))
}

/// Names of the shipped presets, Dynkin members first.
pub const NAMES: [&str; 7] = ["a2_22", "b2", "b3", "c3", "g2", "d962", "affine_a1"];

/// The subset of shipped presets with positive definite symmetrized form.
pub const DYNKIN_NAMES: [&str; 5] = ["a2_22", "b2", "b3", "c3", "g2"];

/// Raw JSON text of a shipped preset.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "a2_22" => Some(include_str!("../fixtures/a2_22.json")),
        "b2" => Some(include_str!("../fixtures/b2.json")),
        "b3" => Some(include_str!("../fixtures/b3.json")),
        "c3" => Some(include_str!("../fixtures/c3.json")),
        "g2" => Some(include_str!("../fixtures/g2.json")),
        "d962" => Some(include_str!("../fixtures/d962.json")),
        "affine_a1" => Some(include_str!("../fixtures/affine_a1.json")),
        _ => None,
    }
}

/// Loads a shipped preset by name.
pub fn load(name: &str) -> Result<Problem, ProblemError> {
    source(name)
        .ok_or_else(|| ProblemError::UnknownName(name.into()))?
        .parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::positive_roots;

    #[test]
    fn every_preset_parses_and_is_connected() {
        for name in NAMES {
            let p = load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(p.data.cartan().is_connected(), "{name}");
            assert_eq!(p.field, FieldDescriptor::Rationals, "{name}");
            let spec = p.spec(AlgebraKind::H);
            assert!(!spec.arrows().is_empty(), "{name}");
        }
    }

    #[test]
    fn dynkin_split_matches_positive_definiteness() {
        for name in NAMES {
            let p = load(name).unwrap();
            assert_eq!(
                p.data.is_positive_definite(),
                DYNKIN_NAMES.contains(&name),
                "{name}"
            );
        }
    }

    #[test]
    fn d962_minimal_symmetrizer_and_local_constants() {
        let p = load("d962").unwrap();
        assert_eq!(p.data.symmetrizer().as_slice(), &[9, 6, 2]);
        assert_eq!(p.data.g(0, 1), 2);
        assert_eq!(p.data.f(0, 1), 2);
        assert_eq!(p.data.f(1, 0), 3);
        assert_eq!(p.data.g(1, 2), 3);
        assert_eq!(p.data.f(1, 2), 1);
        assert_eq!(p.data.f(2, 1), 3);
    }

    #[test]
    fn dynkin_presets_have_expected_root_counts() {
        let expected = [("a2_22", 3), ("b2", 4), ("b3", 9), ("c3", 9), ("g2", 6)];
        for (name, count) in expected {
            let p = load(name).unwrap();
            let roots = positive_roots(&p.data, &p.omega).unwrap();
            assert_eq!(roots.len(), count, "{name}");
        }
    }

    #[test]
    fn omitted_keys_take_defaults() {
        let p: Problem = r#"{"cartan": [[2, -1], [-2, 2]]}"#.parse().unwrap();
        assert_eq!(p.data.symmetrizer().as_slice(), &[2, 1]);
        assert_eq!(p.omega.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(p.field, FieldDescriptor::Rationals);
    }

    #[test]
    fn explicit_field_and_flag_syntax() {
        let p: Problem = r#"{"cartan": [[2, -1], [-1, 2]], "field": "fp:7"}"#
            .parse()
            .unwrap();
        assert_eq!(p.field, FieldDescriptor::PrimeField(7));
        assert!(parse_field("fp:6").is_err());
        assert!(parse_field("r64").is_err());
        assert_eq!(parse_field("q").unwrap(), FieldDescriptor::Rationals);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!("not json".parse::<Problem>().is_err());
        assert!(r#"{"orientation": [[1, 2]]}"#.parse::<Problem>().is_err());
        assert!(r#"{"cartan": [[2, -1], [-1, 2]], "orientation": [[0, 1]]}"#
            .parse::<Problem>()
            .is_err());
        assert!(r#"{"cartan": [[2, -1], [-1, 2]], "symmetrizer": [1, 2]}"#
            .parse::<Problem>()
            .is_err());
        assert!(load("z9").is_err());
    }
}
