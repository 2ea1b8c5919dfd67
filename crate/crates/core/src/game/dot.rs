use std::fmt::Write as _;

use super::{Game, Outcome, Owner};
use crate::logic::Interpretation;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(super) fn to_dot(game: &Game, interp: Option<&Interpretation>) -> String {
    let mut out = String::from("digraph game {\n  node [fontname=\"monospace\"];\n");
    for p in &game.positions {
        let mut label = p.text.clone();
        if let Some(prio) = p.priority {
            let _ = write!(label, " [{prio}]");
        }
        let shape = match (&p.outcome, p.owner) {
            (Some(o), _) => {
                let value = match (o, interp) {
                    (Outcome::Literal(l), Some(pi)) => pi.value(l).map(|v| v.to_string()).ok(),
                    (Outcome::Equality(b), Some(pi)) => Some(pi.carrier().from_bool(*b).to_string()),
                    _ => None,
                };
                if let Some(v) = value {
                    let _ = write!(label, " : {v}");
                }
                "shape=box, style=dashed"
            }
            (None, Owner::Verifier) => "shape=ellipse",
            (None, Owner::Falsifier) => "shape=box",
        };
        let _ = writeln!(out, "  {} [label={}, {shape}];", quote(&p.id), quote(&label));
    }
    for (v, succ) in game.succ.iter().enumerate() {
        for &w in succ {
            let _ = writeln!(out, "  {} -> {};", quote(&game.positions[v].id), quote(&game.positions[w].id));
        }
    }
    out.push_str("}\n");
    out
}
