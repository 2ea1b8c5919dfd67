use std::collections::HashSet;

use super::formula::{FixKind, Formula};
use crate::error::{Error, Result};

/// Pushes negations down to the atoms, dualizing connectives, quantifiers and
/// fixed points. A negated binder `!(lfp R. body)` becomes `gfp R. !body[R/!R]`,
/// so occurrences of `R` inside the body keep positive polarity.
pub fn nnf(f: &Formula) -> Result<Formula> {
    let mut flipped = HashSet::new();
    go(f, false, &mut flipped)
}

fn go(f: &Formula, negated: bool, flipped: &mut HashSet<String>) -> Result<Formula> {
    Ok(match f {
        Formula::Rel { rel, args } => {
            if negated {
                Formula::NegRel { rel: rel.clone(), args: args.clone() }
            } else {
                f.clone()
            }
        }
        Formula::NegRel { rel, args } => {
            if negated {
                Formula::Rel { rel: rel.clone(), args: args.clone() }
            } else {
                f.clone()
            }
        }
        Formula::Eq(a, b) if negated => Formula::Neq(a.clone(), b.clone()),
        Formula::Neq(a, b) if negated => Formula::Eq(a.clone(), b.clone()),
        Formula::Eq(..) | Formula::Neq(..) => f.clone(),
        Formula::Or(a, b) => {
            let (a, b) = (go(a, negated, flipped)?, go(b, negated, flipped)?);
            if negated {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
        Formula::And(a, b) => {
            let (a, b) = (go(a, negated, flipped)?, go(b, negated, flipped)?);
            if negated {
                Formula::or(a, b)
            } else {
                Formula::and(a, b)
            }
        }
        Formula::Exists(v, b) => {
            let b = Box::new(go(b, negated, flipped)?);
            if negated {
                Formula::Forall(v.clone(), b)
            } else {
                Formula::Exists(v.clone(), b)
            }
        }
        Formula::Forall(v, b) => {
            let b = Box::new(go(b, negated, flipped)?);
            if negated {
                Formula::Exists(v.clone(), b)
            } else {
                Formula::Forall(v.clone(), b)
            }
        }
        Formula::Not(b) => go(b, !negated, flipped)?,
        Formula::Fix { kind, rel, vars, body, args } => {
            let was_flipped = if negated { !flipped.insert(rel.clone()) } else { flipped.remove(rel) };
            let body = go(body, negated, flipped);
            if was_flipped {
                flipped.insert(rel.clone());
            } else {
                flipped.remove(rel);
            }
            let kind: FixKind = if negated { kind.dual() } else { *kind };
            Formula::Fix { kind, rel: rel.clone(), vars: vars.clone(), body: Box::new(body?), args: args.clone() }
        }
        Formula::FpVar { rel, .. } => {
            if negated != flipped.contains(rel) {
                return Err(Error::MalformedFormula(format!("fixed-point variable {rel} occurs negatively")));
            }
            f.clone()
        }
    })
}

/// Accepts iff every fixed-point variable occurs under an even number of
/// negations counted from its binder. The check runs on the raw tree, so
/// `!!R(x)` is accepted.
pub fn check_positivity(f: &Formula) -> Result<()> {
    let mut binders: Vec<(String, usize)> = Vec::new();
    let mut path: Vec<String> = Vec::new();
    walk(f, 0, &mut binders, &mut path)
}

fn walk(f: &Formula, nots: usize, binders: &mut Vec<(String, usize)>, path: &mut Vec<String>) -> Result<()> {
    fn descend(
        label: String,
        child: &Formula,
        nots: usize,
        binders: &mut Vec<(String, usize)>,
        path: &mut Vec<String>,
    ) -> Result<()> {
        path.push(label);
        let r = walk(child, nots, binders, path);
        path.pop();
        r
    }
    match f {
        Formula::FpVar { rel, .. } => {
            // An unbound variable is a well-formedness problem, not a positivity one.
            if let Some((_, at)) = binders.iter().rev().find(|(name, _)| name == rel) {
                if (nots - at) % 2 == 1 {
                    let mut full = path.clone();
                    full.push(rel.clone());
                    return Err(Error::NotPositive { relation: rel.clone(), path: full.join("/") });
                }
            }
            Ok(())
        }
        Formula::Not(b) => descend("not".into(), b, nots + 1, binders, path),
        Formula::Or(a, b) => {
            descend("or.0".into(), a, nots, binders, path)?;
            descend("or.1".into(), b, nots, binders, path)
        }
        Formula::And(a, b) => {
            descend("and.0".into(), a, nots, binders, path)?;
            descend("and.1".into(), b, nots, binders, path)
        }
        Formula::Exists(v, b) => descend(format!("exists {v}"), b, nots, binders, path),
        Formula::Forall(v, b) => descend(format!("forall {v}"), b, nots, binders, path),
        Formula::Fix { kind, rel, body, .. } => {
            binders.push((rel.clone(), nots));
            let r = descend(format!("{} {rel}", kind.keyword()), body, nots, binders, path);
            binders.pop();
            r
        }
        _ => Ok(()),
    }
}
