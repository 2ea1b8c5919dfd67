use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{check_positivity, FixKind, Formula, Structure, Term};

/// Classical truth of an LFP sentence in a finite structure.
///
/// Works on the raw formula (negation is Boolean complement) and computes
/// fixed points by iteration in the powerset lattice. It shares no code with
/// the semiring evaluator and serves as its reference.
pub fn boolean_model_check(f: &Formula, structure: &Structure) -> Result<bool> {
    check_positivity(f)?;
    f.check_well_formed(structure.vocabulary(), Some(structure.universe()))?;
    if !f.is_sentence() {
        return Err(Error::MalformedFormula("boolean model check needs a sentence".into()));
    }
    let mut ctx = Ctx { s: structure, vars: Vec::new(), fps: Vec::new() };
    Ok(ctx.holds(f))
}

struct Ctx<'a> {
    s: &'a Structure,
    vars: Vec<(String, usize)>,
    fps: Vec<(String, BTreeSet<Vec<usize>>)>,
}

impl Ctx<'_> {
    fn term(&self, t: &Term) -> usize {
        match t {
            Term::Var(v) => self.vars.iter().rev().find(|(n, _)| n == v).expect("bound variable").1,
            Term::Const(c) => self.s.universe().index(c).expect("universe element"),
        }
    }

    fn tuple(&self, ts: &[Term]) -> Vec<usize> {
        ts.iter().map(|t| self.term(t)).collect()
    }

    fn holds(&mut self, f: &Formula) -> bool {
        match f {
            Formula::Rel { rel, args } => self.s.contains(rel, &self.tuple(args)),
            Formula::NegRel { rel, args } => !self.s.contains(rel, &self.tuple(args)),
            Formula::Eq(a, b) => self.term(a) == self.term(b),
            Formula::Neq(a, b) => self.term(a) != self.term(b),
            Formula::Or(a, b) => self.holds(a) || self.holds(b),
            Formula::And(a, b) => self.holds(a) && self.holds(b),
            Formula::Not(a) => !self.holds(a),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let universal = matches!(f, Formula::Forall(..));
                for e in 0..self.s.universe().len() {
                    self.vars.push((v.clone(), e));
                    let h = self.holds(b);
                    self.vars.pop();
                    if h != universal {
                        return !universal;
                    }
                }
                universal
            }
            Formula::FpVar { rel, args } => {
                let t = self.tuple(args);
                self.fps.iter().rev().find(|(n, _)| n == rel).expect("bound fixed-point variable").1.contains(&t)
            }
            Formula::Fix { kind, rel, vars, body, args } => {
                let all: BTreeSet<Vec<usize>> = self.s.universe().tuples(vars.len()).collect();
                let mut current = match kind {
                    FixKind::Lfp => BTreeSet::new(),
                    FixKind::Gfp => all.clone(),
                };
                loop {
                    self.fps.push((rel.clone(), current.clone()));
                    let mut next = BTreeSet::new();
                    for t in &all {
                        let depth = self.vars.len();
                        self.vars.extend(vars.iter().cloned().zip(t.iter().copied()));
                        if self.holds(body) {
                            next.insert(t.clone());
                        }
                        self.vars.truncate(depth);
                    }
                    self.fps.pop();
                    if next == current {
                        break;
                    }
                    current = next;
                }
                current.contains(&self.tuple(args))
            }
        }
    }
}
