use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{Game, Outcome, Owner, Position};
use crate::error::{Error, Result};
use crate::logic::{FixKind, Formula, GroundLiteral, Term, Universe, Vocabulary};
use crate::syntax::print_formula;

/// Outermost-first priorities: each binder gets the smallest number not
/// below the priorities of its enclosing binders with the right parity
/// (even for `gfp`, odd for `lfp`).
pub fn assign_priorities(psi: &Formula) -> BTreeMap<String, u32> {
    fn go(f: &Formula, floor: u32, out: &mut BTreeMap<String, u32>) {
        if let Formula::Fix { kind, rel, body, .. } = f {
            let want = match kind {
                FixKind::Gfp => 0,
                FixKind::Lfp => 1,
            };
            let p = if floor % 2 == want { floor } else { floor + 1 };
            out.insert(rel.clone(), p);
            go(body, p, out);
        } else {
            for c in f.children() {
                go(c, floor, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    go(psi, 0, &mut out);
    out
}

fn free_fp_vars(f: &Formula) -> BTreeSet<String> {
    match f {
        Formula::FpVar { rel, .. } => BTreeSet::from([rel.clone()]),
        Formula::Fix { rel, body, .. } => {
            let mut s = free_fp_vars(body);
            s.remove(rel);
            s
        }
        _ => f.children().into_iter().flat_map(free_fp_vars).collect(),
    }
}

fn outermost_binders(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Fix { rel, .. } => out.push(rel.clone()),
        _ => f.children().into_iter().for_each(|c| outermost_binders(c, out)),
    }
}

/// Replaces free occurrences of the mapped variables by element constants.
fn substitute(f: &Formula, map: &BTreeMap<String, String>) -> Formula {
    let term = |t: &Term| match t {
        Term::Var(v) => map.get(v).map_or_else(|| t.clone(), |c| Term::Const(c.clone())),
        Term::Const(_) => t.clone(),
    };
    let without = |vars: &[String]| {
        let mut m = map.clone();
        for v in vars {
            m.remove(v);
        }
        m
    };
    match f {
        Formula::Rel { rel, args } => Formula::Rel { rel: rel.clone(), args: args.iter().map(term).collect() },
        Formula::NegRel { rel, args } => Formula::NegRel { rel: rel.clone(), args: args.iter().map(term).collect() },
        Formula::FpVar { rel, args } => Formula::FpVar { rel: rel.clone(), args: args.iter().map(term).collect() },
        Formula::Eq(a, b) => Formula::Eq(term(a), term(b)),
        Formula::Neq(a, b) => Formula::Neq(term(a), term(b)),
        Formula::Or(a, b) => Formula::or(substitute(a, map), substitute(b, map)),
        Formula::And(a, b) => Formula::and(substitute(a, map), substitute(b, map)),
        Formula::Not(a) => Formula::not(substitute(a, map)),
        Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(substitute(b, &without(std::slice::from_ref(v))))),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(substitute(b, &without(std::slice::from_ref(v))))),
        Formula::Fix { kind, rel, vars, body, args } => Formula::Fix {
            kind: *kind,
            rel: rel.clone(),
            vars: vars.clone(),
            body: Box::new(substitute(body, &without(vars))),
            args: args.iter().map(term).collect(),
        },
    }
}

type Env = Vec<(String, usize)>;

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Node(usize, Vec<usize>),
    Literal(GroundLiteral),
}

struct Builder<'f> {
    universe: &'f Universe,
    binders: HashMap<String, &'f Formula>,
    params: HashMap<String, BTreeSet<String>>,
    relevant: HashMap<usize, Vec<String>>,
    priority: BTreeMap<String, u32>,
    keys: HashMap<Key, usize>,
    positions: Vec<Position>,
    nodes: Vec<Option<(&'f Formula, Env)>>,
    succ: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
}

fn addr(f: &Formula) -> usize {
    f as *const Formula as usize
}

impl<'f> Builder<'f> {
    fn collect_binders(&mut self, f: &'f Formula) {
        if let Formula::Fix { rel, .. } = f {
            self.binders.insert(rel.clone(), f);
        }
        for c in f.children() {
            self.collect_binders(c);
        }
    }

    /// Variables a binder's body depends on besides its own arguments,
    /// including those of enclosing binders it refers to.
    fn params(&mut self, rel: &str) -> BTreeSet<String> {
        if let Some(p) = self.params.get(rel) {
            return p.clone();
        }
        let Formula::Fix { vars, body, .. } = self.binders[rel] else { unreachable!() };
        let mut p = body.free_vars();
        for v in vars {
            p.remove(v);
        }
        for s in free_fp_vars(body) {
            if s != rel {
                p.extend(self.params(&s));
            }
        }
        self.params.insert(rel.to_string(), p.clone());
        p
    }

    fn relevant(&mut self, f: &Formula) -> Vec<String> {
        if let Some(r) = self.relevant.get(&addr(f)) {
            return r.clone();
        }
        let mut r = f.free_vars();
        for s in free_fp_vars(f) {
            r.extend(self.params(&s));
        }
        let r: Vec<String> = r.into_iter().collect();
        self.relevant.insert(addr(f), r.clone());
        r
    }

    fn lookup(env: &Env, t: &Term, universe: &Universe) -> usize {
        match t {
            Term::Var(v) => env.iter().rev().find(|(n, _)| n == v).expect("relevant variable").1,
            Term::Const(c) => universe.index(c).expect("checked element"),
        }
    }

    /// The position for subformula `f` under `env`, created on first use.
    fn position(&mut self, f: &'f Formula, env: &Env) -> usize {
        let relevant = self.relevant(f);
        let env: Env = relevant
            .iter()
            .map(|v| (v.clone(), env.iter().rev().find(|(n, _)| n == v).expect("relevant variable").1))
            .collect();
        let key = match f {
            Formula::Rel { rel, args } | Formula::NegRel { rel, args } => Key::Literal(GroundLiteral {
                rel: rel.clone(),
                args: args
                    .iter()
                    .map(|t| self.universe.name(Self::lookup(&env, t, self.universe)).to_string())
                    .collect(),
                positive: matches!(f, Formula::Rel { .. }),
            }),
            _ => Key::Node(addr(f), env.iter().map(|(_, e)| *e).collect()),
        };
        if let Some(&i) = self.keys.get(&key) {
            return i;
        }
        let map: BTreeMap<String, String> =
            env.iter().map(|(v, e)| (v.clone(), self.universe.name(*e).to_string())).collect();
        let (owner, neutral, outcome) = match (f, &key) {
            (_, Key::Literal(l)) => (Owner::Verifier, false, Some(Outcome::Literal(l.clone()))),
            (Formula::Eq(a, b) | Formula::Neq(a, b), _) => {
                let same = Self::lookup(&env, a, self.universe) == Self::lookup(&env, b, self.universe);
                (Owner::Verifier, false, Some(Outcome::Equality(same == matches!(f, Formula::Eq(..)))))
            }
            (Formula::Or(..) | Formula::Exists(..), _) => (Owner::Verifier, false, None),
            (Formula::And(..) | Formula::Forall(..), _) => (Owner::Falsifier, false, None),
            _ => (Owner::Verifier, true, None),
        };
        let (priority, fp_relation) = match f {
            Formula::FpVar { rel, .. } => (self.priority.get(rel).copied(), Some(rel.clone())),
            _ => (None, None),
        };
        let text = match &key {
            Key::Literal(l) => l.to_string(),
            Key::Node(..) => print_formula(&substitute(f, &map)),
        };
        let i = self.positions.len();
        self.positions.push(Position { id: text.clone(), text, owner, neutral, priority, fp_relation, outcome });
        self.nodes.push(if self.positions[i].outcome.is_some() { None } else { Some((f, env)) });
        self.succ.push(Vec::new());
        self.keys.insert(key, i);
        self.queue.push_back(i);
        i
    }

    fn expand(&mut self, i: usize) {
        let Some((f, env)) = self.nodes[i].clone() else { return };
        let n = self.universe.len();
        let mut out = Vec::new();
        match f {
            Formula::Or(a, b) | Formula::And(a, b) => {
                out.push(self.position(a, &env));
                out.push(self.position(b, &env));
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                for e in 0..n {
                    let mut env2 = env.clone();
                    env2.push((v.clone(), e));
                    out.push(self.position(b, &env2));
                }
            }
            Formula::Fix { vars, body, args, .. } => {
                let mut env2 = env.clone();
                for (v, t) in vars.iter().zip(args) {
                    env2.push((v.clone(), Self::lookup(&env, t, self.universe)));
                }
                out.push(self.position(body, &env2));
            }
            Formula::FpVar { rel, args } => {
                let Formula::Fix { vars, body, .. } = self.binders[rel] else { unreachable!() };
                let mut env2 = env.clone();
                for (v, t) in vars.iter().zip(args) {
                    env2.push((v.clone(), Self::lookup(&env, t, self.universe)));
                }
                out.push(self.position(body, &env2));
            }
            _ => {}
        }
        if self.positions[i].owner == Owner::Verifier {
            let mut seen = BTreeSet::new();
            out.retain(|w| seen.insert(*w));
        }
        self.succ[i] = out;
    }
}

pub(super) fn build(psi: &Formula, vocab: &Vocabulary, universe: &Universe) -> Result<Game> {
    fn has_not(f: &Formula) -> bool {
        matches!(f, Formula::Not(_)) || f.children().into_iter().any(has_not)
    }
    if has_not(psi) {
        return Err(Error::MalformedFormula("game construction needs a formula in negation normal form".into()));
    }
    psi.check_well_formed(vocab, Some(universe))?;
    if !psi.is_sentence() {
        return Err(Error::MalformedFormula("game construction needs a sentence".into()));
    }
    let priority = assign_priorities(psi);
    let mut b = Builder {
        universe,
        binders: HashMap::new(),
        params: HashMap::new(),
        relevant: HashMap::new(),
        priority: priority.clone(),
        keys: HashMap::new(),
        positions: Vec::new(),
        nodes: Vec::new(),
        succ: Vec::new(),
        queue: VecDeque::new(),
    };
    b.collect_binders(psi);
    let root = b.position(psi, &Vec::new());
    while let Some(i) = b.queue.pop_front() {
        b.expand(i);
    }
    // Distinct positions may print alike when they differ only in values of
    // enclosing binder parameters.
    let mut seen: HashMap<String, usize> = HashMap::new();
    for p in &mut b.positions {
        let k = seen.entry(p.text.clone()).or_insert(0);
        *k += 1;
        if *k > 1 {
            p.id = format!("{}#{}", p.text, k);
        }
    }
    let choice_positions =
        (0..b.positions.len()).filter(|&i| b.positions[i].owner == Owner::Verifier && b.succ[i].len() > 1).collect();
    let binder_kind = b
        .binders
        .iter()
        .map(|(r, f)| match f {
            Formula::Fix { kind, .. } => (r.clone(), *kind),
            _ => unreachable!(),
        })
        .collect();
    let mut outermost = Vec::new();
    outermost_binders(psi, &mut outermost);
    Ok(Game {
        universe: universe.clone(),
        positions: b.positions,
        succ: b.succ,
        root,
        binder_priority: priority,
        binder_kind,
        outermost,
        choice_positions,
    })
}
