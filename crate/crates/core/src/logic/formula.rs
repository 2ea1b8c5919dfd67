use std::collections::{BTreeSet, HashMap};

use super::{Universe, Vocabulary};
use crate::error::{Error, Result};

/// An argument of an atom: a universe element or a bound first-order variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Const(n) | Term::Var(n) => n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixKind {
    Lfp,
    Gfp,
}

impl FixKind {
    pub fn dual(self) -> FixKind {
        match self {
            FixKind::Lfp => FixKind::Gfp,
            FixKind::Gfp => FixKind::Lfp,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            FixKind::Lfp => "lfp",
            FixKind::Gfp => "gfp",
        }
    }
}

/// LFP syntax. `Fix` is the instantiated fixed-point formula
/// `[kind rel(vars). body](args)`; `FpVar` is an occurrence of a fixed-point
/// relation variable inside its binder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Rel { rel: String, args: Vec<Term> },
    NegRel { rel: String, args: Vec<Term> },
    Eq(Term, Term),
    Neq(Term, Term),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Not(Box<Formula>),
    Fix { kind: FixKind, rel: String, vars: Vec<String>, body: Box<Formula>, args: Vec<Term> },
    FpVar { rel: String, args: Vec<Term> },
}

impl Formula {
    pub fn rel(rel: &str, args: Vec<Term>) -> Formula {
        Formula::Rel { rel: rel.into(), args }
    }

    pub fn neg_rel(rel: &str, args: Vec<Term>) -> Formula {
        Formula::NegRel { rel: rel.into(), args }
    }

    pub fn fp_var(rel: &str, args: Vec<Term>) -> Formula {
        Formula::FpVar { rel: rel.into(), args }
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn fix(kind: FixKind, rel: &str, vars: &[&str], body: Formula, args: Vec<Term>) -> Formula {
        Formula::Fix {
            kind,
            rel: rel.into(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
            body: Box::new(body),
            args,
        }
    }

    /// Direct subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Or(a, b) | Formula::And(a, b) => vec![a, b],
            Formula::Exists(_, b) | Formula::Forall(_, b) | Formula::Not(b) => vec![b],
            Formula::Fix { body, .. } => vec![body],
            _ => Vec::new(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn terms(ts: &[Term], out: &mut BTreeSet<String>) {
            for t in ts {
                if let Term::Var(v) = t {
                    out.insert(v.clone());
                }
            }
        }
        let mut out = BTreeSet::new();
        match self {
            Formula::Rel { args, .. } | Formula::NegRel { args, .. } | Formula::FpVar { args, .. } => {
                terms(args, &mut out)
            }
            Formula::Eq(a, b) | Formula::Neq(a, b) => terms(&[a.clone(), b.clone()], &mut out),
            Formula::Or(a, b) | Formula::And(a, b) => {
                out.extend(a.free_vars());
                out.extend(b.free_vars());
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                out.extend(b.free_vars());
                out.remove(v);
            }
            Formula::Not(b) => out.extend(b.free_vars()),
            Formula::Fix { vars, body, args, .. } => {
                out.extend(body.free_vars());
                for v in vars {
                    out.remove(v);
                }
                terms(args, &mut out);
            }
        }
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn contains_fixpoint(&self) -> bool {
        matches!(self, Formula::Fix { .. }) || self.children().iter().any(|c| c.contains_fixpoint())
    }

    /// True if a greatest fixed point occurs after negations are pushed to
    /// the atoms.
    pub fn has_gfp_in_nnf(&self) -> bool {
        fn go(f: &Formula, negated: bool) -> bool {
            match f {
                Formula::Fix { kind, body, .. } => {
                    let k = if negated { kind.dual() } else { *kind };
                    k == FixKind::Gfp || go(body, negated)
                }
                Formula::Not(b) => go(b, !negated),
                _ => f.children().iter().any(|c| go(c, negated)),
            }
        }
        go(self, false)
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Binder names in preorder.
    pub fn binders(&self) -> Vec<(FixKind, &str)> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<(FixKind, &'a str)>) {
            if let Formula::Fix { kind, rel, .. } = f {
                out.push((*kind, rel.as_str()));
            }
            for c in f.children() {
                go(c, out);
            }
        }
        go(self, &mut out);
        out
    }

    /// Structural checks: atoms match the vocabulary, fixed-point variables
    /// are bound with matching arity, binder names are unique and disjoint
    /// from the vocabulary, variables are bound, constants name elements.
    pub fn check_well_formed(&self, vocab: &Vocabulary, universe: Option<&Universe>) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (_, name) in self.binders() {
            if vocab.contains(name) {
                return Err(Error::MalformedFormula(format!(
                    "fixed-point variable {name} shadows a vocabulary relation"
                )));
            }
            if !seen.insert(name.to_string()) {
                return Err(Error::MalformedFormula(format!("fixed-point variable {name} bound twice")));
            }
        }
        let mut scope = Scope { vars: Vec::new(), fps: HashMap::new() };
        check(self, vocab, universe, &mut scope)
    }
}

struct Scope {
    vars: Vec<String>,
    fps: HashMap<String, usize>,
}

fn check_terms(ts: &[Term], universe: Option<&Universe>, scope: &Scope) -> Result<()> {
    for t in ts {
        match t {
            Term::Var(v) if !scope.vars.contains(v) => {
                return Err(Error::MalformedFormula(format!("variable {v} is not bound")));
            }
            Term::Const(c) => {
                if let Some(u) = universe {
                    if u.index(c).is_none() {
                        return Err(Error::MalformedFormula(format!("{c} is not a universe element")));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

fn check(f: &Formula, vocab: &Vocabulary, universe: Option<&Universe>, scope: &mut Scope) -> Result<()> {
    match f {
        Formula::Rel { rel, args } | Formula::NegRel { rel, args } => {
            let arity = vocab.arity(rel).ok_or_else(|| Error::UnknownRelation(rel.clone()))?;
            if arity != args.len() {
                return Err(Error::ArityMismatch { relation: rel.clone(), expected: arity, found: args.len() });
            }
            check_terms(args, universe, scope)
        }
        Formula::FpVar { rel, args } => {
            let arity = *scope
                .fps
                .get(rel)
                .ok_or_else(|| Error::MalformedFormula(format!("fixed-point variable {rel} is not bound")))?;
            if arity != args.len() {
                return Err(Error::ArityMismatch { relation: rel.clone(), expected: arity, found: args.len() });
            }
            check_terms(args, universe, scope)
        }
        Formula::Eq(a, b) | Formula::Neq(a, b) => check_terms(&[a.clone(), b.clone()], universe, scope),
        Formula::Or(a, b) | Formula::And(a, b) => {
            check(a, vocab, universe, scope)?;
            check(b, vocab, universe, scope)
        }
        Formula::Not(b) => check(b, vocab, universe, scope),
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            scope.vars.push(v.clone());
            let r = check(b, vocab, universe, scope);
            scope.vars.pop();
            r
        }
        Formula::Fix { rel, vars, body, args, .. } => {
            if vars.len() != args.len() {
                return Err(Error::ArityMismatch { relation: rel.clone(), expected: vars.len(), found: args.len() });
            }
            if vars.is_empty() {
                return Err(Error::MalformedFormula(format!("fixed point {rel} binds no variables")));
            }
            for (i, v) in vars.iter().enumerate() {
                if vars[..i].contains(v) {
                    return Err(Error::MalformedFormula(format!("variable {v} repeated in binder {rel}")));
                }
            }
            check_terms(args, universe, scope)?;
            let depth = scope.vars.len();
            scope.vars.extend(vars.iter().cloned());
            scope.fps.insert(rel.clone(), vars.len());
            let r = check(body, vocab, universe, scope);
            scope.fps.remove(rel);
            scope.vars.truncate(depth);
            r
        }
    }
}
