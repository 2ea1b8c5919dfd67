//! JSON problem files: a universe, a vocabulary and a literal annotation.
//!
//! ```json
//! {
//!   "carrier": "sorpdual",
//!   "universe": ["u", "v"],
//!   "relations": {"E": 2, "P": 1},
//!   "most_general": true,
//!   "annotations": [["E(u,v)", "x2"], ["P(u)", "0"], ["P(v)", "1"]],
//!   "default_pos": "0",
//!   "default_neg": "1"
//! }
//! ```
//!
//! Values use the carrier's text form. An atom annotated on one side only
//! gets the complementary value on the other side when that is determined
//! (`0 ↔ 1`, `x ↔ ~x`). Atoms annotated on neither side get a fresh token
//! pair under `most_general`, and the defaults otherwise. An optional
//! `tokens` list declares the admissible token names.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::eval::Assignment;
use crate::logic::{GroundLiteral, Interpretation, Universe, Vocabulary};
use crate::semiring::{Carrier, Value};
use crate::sorp::SorpPoly;
use crate::token::Token;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    carrier: String,
    universe: Vec<String>,
    relations: BTreeMap<String, usize>,
    #[serde(default)]
    tokens: Option<Vec<String>>,
    #[serde(default)]
    most_general: bool,
    #[serde(default)]
    annotations: Vec<(String, String)>,
    #[serde(default)]
    default_pos: Option<String>,
    #[serde(default)]
    default_neg: Option<String>,
}

fn problem_error(pointer: impl Into<String>, message: impl ToString) -> Error {
    Error::Problem { pointer: pointer.into(), message: message.to_string() }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| problem_error(pointer_of(e.path()), e.inner()))
}

/// The token a value consists of, if it is a single token of exponent 1.
fn as_single_token(v: &Value) -> Option<Token> {
    let p = v.as_sorp()?;
    match p.monomials() {
        [m] => match m.factors() {
            [(t, e)] if *e == crate::extnat::ExtNat::ONE => Some(t.clone()),
            _ => None,
        },
        _ => None,
    }
}

/// The value forced on the other side of an atom, if any.
fn complement(carrier: &Carrier, v: &Value) -> Option<Value> {
    if v.is_zero() {
        return Some(carrier.one());
    }
    if v.is_one() {
        return Some(carrier.zero());
    }
    let t = as_single_token(v)?;
    let dual = matches!(carrier, Carrier::SorpDual);
    Some(match carrier {
        Carrier::Sorp | Carrier::SorpDual => carrier_poly(carrier, SorpPoly::token(t.dual(), dual)),
        _ => return None,
    })
}

fn carrier_poly(carrier: &Carrier, p: SorpPoly) -> Value {
    match carrier {
        Carrier::SorpDual => Value::SorpDual(p),
        _ => Value::Sorp(p),
    }
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> Result<Interpretation> {
    parse_problem_as(text, None)
}

/// Parses a problem file, reading its values in `carrier` instead of the
/// carrier the file names.
pub fn parse_problem_as(text: &str, carrier: Option<&Carrier>) -> Result<Interpretation> {
    let file: ProblemFile = from_json(text)?;
    let carrier = match carrier {
        Some(c) => c.clone(),
        None => Carrier::parse(&file.carrier).map_err(|e| problem_error("/carrier", e))?,
    };
    let universe = Universe::new(file.universe.iter().cloned()).map_err(|e| problem_error("/universe", e))?;
    for (i, e) in file.universe.iter().enumerate() {
        if !crate::token::is_identifier(e) {
            return Err(problem_error(format!("/universe/{i}"), format!("{e:?} is not an identifier")));
        }
    }
    let vocab = Vocabulary::new(file.relations.iter().map(|(r, a)| (r.clone(), *a)))
        .map_err(|e| problem_error("/relations", e))?;
    let declared: Option<BTreeSet<String>> = file.tokens.as_ref().map(|ts| ts.iter().cloned().collect());
    let parse_value = |pointer: String, text: &str| -> Result<Value> {
        let v = carrier.parse_value(text).map_err(|e| problem_error(pointer.clone(), e))?;
        if let Some(decl) = &declared {
            if let Some(t) = v.tokens().into_iter().find(|t| !decl.contains(t.name())) {
                return Err(problem_error(pointer, format!("token {t} is not declared")));
            }
        }
        Ok(v)
    };

    let mut given: BTreeMap<GroundLiteral, Value> = BTreeMap::new();
    for (i, (lit_text, value_text)) in file.annotations.iter().enumerate() {
        let lit = GroundLiteral::parse(lit_text).map_err(|e| problem_error(format!("/annotations/{i}/0"), e))?;
        crate::logic::Structure::new(universe.clone(), vocab.clone())
            .insert_named(&lit.rel, &lit.args.iter().map(String::as_str).collect::<Vec<_>>())
            .map_err(|e| problem_error(format!("/annotations/{i}/0"), e))?;
        let value = parse_value(format!("/annotations/{i}/1"), value_text)?;
        if given.insert(lit.clone(), value).is_some() {
            return Err(problem_error(format!("/annotations/{i}/0"), format!("duplicate annotation for {lit}")));
        }
    }
    let default_pos = file.default_pos.as_deref().map(|t| parse_value("/default_pos".into(), t)).transpose()?;
    let default_neg = file.default_neg.as_deref().map(|t| parse_value("/default_neg".into(), t)).transpose()?;

    let mut fresh_names = BTreeSet::new();
    if file.most_general {
        if !matches!(carrier, Carrier::SorpDual) {
            return Err(problem_error("/most_general", "most_general requires the sorpdual carrier"));
        }
        for v in given.values() {
            fresh_names.extend(v.tokens().into_iter().map(|t| t.name().to_string()));
        }
    }
    let mg =
        if file.most_general { Some(Interpretation::most_general(vocab.clone(), universe.clone())?) } else { None };
    let interp = Interpretation::from_fn(carrier.clone(), universe, vocab, |lit| {
        if let Some(v) = given.get(lit) {
            return Ok(v.clone());
        }
        if let Some(other) = given.get(&lit.negate()) {
            if let Some(c) = complement(&carrier, other) {
                return Ok(c);
            }
        } else if let Some(mg) = &mg {
            let v = mg.value(lit)?.clone();
            if let Some(t) = v.tokens().into_iter().next() {
                if fresh_names.contains(t.name()) {
                    return Err(problem_error(
                        "/annotations",
                        format!("generated token {t} for {lit} clashes with an annotated token"),
                    ));
                }
            }
            return Ok(v);
        }
        let default = if lit.positive { &default_pos } else { &default_neg };
        default.clone().ok_or_else(|| {
            let key = if lit.positive { "default_pos" } else { "default_neg" };
            problem_error("/annotations", format!("no value for {lit} and no {key}"))
        })
    })?;
    if file.most_general && !interp.is_model_compatible() {
        return Err(problem_error("/annotations", "annotation is not model-compatible"));
    }
    Ok(interp)
}

pub fn load_problem(path: &Path) -> Result<Interpretation> {
    parse_problem(&read_file(path)?)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| problem_error("", format!("{}: {e}", path.display())))
}

/// Parses a token assignment `{"x": "1/2", "~x": "0"}` for a target carrier.
pub fn parse_assignment(text: &str, target: &Carrier) -> Result<Assignment> {
    let raw: BTreeMap<String, String> = from_json(text)?;
    let mut out = Assignment::new();
    for (k, v) in raw {
        let pointer = format!("/{}", k.replace('~', "~0").replace('/', "~1"));
        let token = Token::parse(&k).map_err(|e| problem_error(pointer.clone(), e))?;
        let value = target.parse_value(&v).map_err(|e| problem_error(pointer, e))?;
        out.insert(token, value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const BUCHI_FILE: &str = r#"{
        "carrier": "sorpdual",
        "universe": ["u", "v"],
        "relations": {"E": 2, "P": 1},
        "tokens": ["x1", "x2", "y1", "y2"],
        "most_general": true,
        "annotations": [
            ["E(u,u)", "x1"], ["E(u,v)", "x2"], ["E(v,v)", "y1"], ["E(v,u)", "y2"],
            ["P(u)", "0"], ["P(v)", "1"]
        ]
    }"#;

    #[test]
    fn most_general_file() {
        let pi = parse_problem(BUCHI_FILE).unwrap();
        assert!(pi.is_model_compatible());
        let lit = |t: &str| GroundLiteral::parse(t).unwrap();
        assert_eq!(pi.value(&lit("!E(u,v)")).unwrap().to_string(), "~x2");
        assert_eq!(pi.value(&lit("!P(u)")).unwrap().to_string(), "1");
        assert_eq!(pi.value(&lit("!P(v)")).unwrap().to_string(), "0");
        let names: BTreeSet<String> = pi.tokens().iter().map(|t| t.name().to_string()).collect();
        assert_eq!(names, ["x1", "x2", "y1", "y2"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn boolean_graph_is_model_defining() {
        let text = r#"{"carrier": "bool", "universe": ["u", "v"], "relations": {"E": 2},
            "annotations": [["E(u,v)", "1"]], "default_pos": "0", "default_neg": "1"}"#;
        let pi = parse_problem(text).unwrap();
        assert!(pi.is_model_defining());
        let s = pi.induced_structure().unwrap();
        assert!(s.contains("E", &[0, 1]));
        assert_eq!(s.tuples("E").count(), 1);
    }

    #[test]
    fn missing_literal_without_default() {
        let text = r#"{"carrier": "bool", "universe": ["u"], "relations": {"P": 1},
            "annotations": [["P(u)", "x"]]}"#;
        assert!(matches!(parse_problem(text), Err(Error::Problem { pointer, .. }) if pointer == "/annotations/0/1"));
        let text = r#"{"carrier": "viterbi", "universe": ["u"], "relations": {"P": 1},
            "annotations": [["P(u)", "1/2"]]}"#;
        match parse_problem(text) {
            Err(Error::Problem { pointer, message }) => {
                assert_eq!(pointer, "/annotations");
                assert!(message.contains("!P(u)"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors_have_pointers() {
        let text = r#"{"carrier": "bool", "universe": ["u"], "relations": {"P": "one"}}"#;
        assert!(matches!(parse_problem(text), Err(Error::Problem { pointer, .. }) if pointer == "/relations/P"));
        let text = r#"{"carrier": "bool", "universe": ["u"], "relations": {"P": 1},
            "annotations": [["P(u)", "1"], ["P(u)", "0"]], "default_neg": "0"}"#;
        assert!(matches!(parse_problem(text), Err(Error::Problem { pointer, .. }) if pointer == "/annotations/1/0"));
        let text = r#"{"carrier": "bool", "universe": ["u"], "relations": {"P": 1},
            "annotations": [["Q(u)", "1"]]}"#;
        assert!(matches!(parse_problem(text), Err(Error::Problem { pointer, .. }) if pointer == "/annotations/0/0"));
    }

    #[test]
    fn undeclared_token() {
        let text = BUCHI_FILE.replacen("\"y2\"]", "\"y3\"]", 1);
        assert!(matches!(parse_problem(&text), Err(Error::Problem { message, .. }) if message.contains("y2")));
    }

    #[test]
    fn assignment_files() {
        let a = parse_assignment(r#"{"x": "1", "y": "999/1000"}"#, &Carrier::Viterbi).unwrap();
        assert_eq!(a[&Token::new("y")].to_string(), "999/1000");
        assert!(parse_assignment(r#"{"x": "2"}"#, &Carrier::Viterbi).is_err());
    }

    #[test]
    fn carrier_override() {
        let text = r#"{"carrier": "bool", "universe": ["u"], "relations": {"P": 1},
            "annotations": [["P(u)", "1"]]}"#;
        let pi = parse_problem_as(text, Some(&Carrier::Viterbi)).unwrap();
        assert_eq!(*pi.carrier(), Carrier::Viterbi);
        assert_eq!(pi.value(&GroundLiteral::parse("!P(u)").unwrap()).unwrap().to_string(), "0");
        assert!(parse_problem_as(BUCHI_FILE, Some(&Carrier::Sorp)).is_err());
    }
}
