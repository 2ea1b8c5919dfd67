//! Shared fixtures for unit tests.

use std::collections::BTreeMap;

use crate::logic::{GroundLiteral, Interpretation, Universe, Vocabulary};
use crate::semiring::{Carrier, Value};

pub const INF_PATH: &str = "gfp R(x). exists y. (E(x,y) & R(y)) @ (u)";
pub const BUCHI: &str = "gfp X(x). lfp Y(x). exists y. (E(x,y) & (X(y) & P(y) | Y(y))) @ (x) @ (u)";

pub fn uv() -> Universe {
    Universe::new(["u", "v"]).unwrap()
}

/// Interpretation over `{u, v}` with the given positive-literal values;
/// unlisted atoms are false (`0`, negation `1`), listed ones have their
/// negation valued by `neg` (or `0`).
pub fn interp(carrier: &str, vocab: &[(&str, usize)], pos: &[(&str, &str)], neg: &[(&str, &str)]) -> Interpretation {
    let c = Carrier::parse(carrier).unwrap();
    let vocab = Vocabulary::new(vocab.iter().map(|(r, a)| (r.to_string(), *a))).unwrap();
    let pos: BTreeMap<GroundLiteral, Value> =
        pos.iter().map(|(l, v)| (GroundLiteral::parse(l).unwrap(), c.parse_value(v).unwrap())).collect();
    let neg: BTreeMap<GroundLiteral, Value> =
        neg.iter().map(|(l, v)| (GroundLiteral::parse(l).unwrap(), c.parse_value(v).unwrap())).collect();
    Interpretation::from_fn(c.clone(), uv(), vocab, |lit| {
        if let Some(v) = if lit.positive { pos.get(lit) } else { neg.get(&lit.negate()) } {
            return Ok(v.clone());
        }
        let atom_listed = pos.contains_key(&if lit.positive { lit.clone() } else { lit.negate() });
        Ok(c.from_bool(!lit.positive && !atom_listed))
    })
    .unwrap()
}

pub fn buchi_pi() -> Interpretation {
    interp(
        "sorpdual",
        &[("E", 2), ("P", 1)],
        &[("E(u,u)", "x1"), ("E(u,v)", "x2"), ("E(v,v)", "y1"), ("E(v,u)", "y2"), ("P(v)", "1")],
        &[("E(u,u)", "~x1"), ("E(u,v)", "~x2"), ("E(v,v)", "~y1"), ("E(v,u)", "~y2"), ("P(v)", "0")],
    )
}
