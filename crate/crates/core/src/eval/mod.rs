//! Provenance evaluation of LFP formulas.
//!
//! Formulas are brought into negation normal form and evaluated by
//! structural recursion: `∨ ↦ +`, `∧ ↦ ·`, `∃ ↦ Σ`, `∀ ↦ ∏`, literals by the
//! interpretation and (in)equalities by `0/1`. Fixed points are computed by
//! iterating their update operators; a nested fixed point is recomputed on
//! every step of the enclosing iteration.

mod classic;
mod fixpoint;
mod specialize;

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

pub use classic::boolean_model_check;
pub use fixpoint::{gfp_iterate_widened, gfp_widened_candidate, lfp_iterate, FixpointReport, ValuationTable};
pub use specialize::{identity_assignment, satisfiable_mod_pi, specialize, valid_mod_pi, Assignment};

use crate::error::{Error, Result};
use crate::logic::{check_positivity, nnf, FixKind, Formula, Interpretation, Term};
use crate::semiring::{Carrier, TokenSets, Value};
use crate::sorp::{eval_hom, SorpPoly};
use crate::token::Token;

/// Environment variable overriding [`EvalConfig::step_cap`].
pub const STEP_CAP_ENV: &str = "FIXPROV_STEP_CAP";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalConfig {
    /// Maximum number of steps of any single fixed-point iteration.
    pub step_cap: usize,
    pub widen_b0: u32,
    pub widen_bmax: u32,
    /// Keep a [`FixpointReport`] for every fixed point computed.
    pub trace: bool,
    /// Largest token set for which the top element of `W[X]` is materialized.
    pub why_token_cap: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { step_cap: 10_000, widen_b0: 8, widen_bmax: 64, trace: false, why_token_cap: 12 }
    }
}

impl EvalConfig {
    /// Defaults, with the step cap taken from `FIXPROV_STEP_CAP` when set.
    pub fn from_env() -> Result<EvalConfig> {
        let mut cfg = EvalConfig::default();
        if let Ok(text) = std::env::var(STEP_CAP_ENV) {
            cfg.step_cap = text.trim().parse().map_err(|_| Error::InvalidValue {
                carrier: STEP_CAP_ENV.into(),
                text,
                reason: "expected a positive integer".into(),
            })?;
        }
        Ok(cfg)
    }
}

const MAX_REPORTS: usize = 10_000;

struct FpBinding {
    rel: String,
    table: Rc<ValuationTable>,
    generation: u64,
}

#[derive(Default)]
struct Env {
    vars: Vec<(String, usize)>,
    fps: Vec<FpBinding>,
}

impl Env {
    fn var(&self, name: &str) -> Option<usize> {
        self.vars.iter().rev().find(|(n, _)| n == name).map(|(_, e)| *e)
    }
}

#[derive(PartialEq, Eq, Hash)]
struct CacheKey {
    node: usize,
    vars: Vec<usize>,
    generations: Vec<u64>,
}

/// Evaluates formulas under one interpretation.
pub struct Evaluator<'a> {
    interp: &'a Interpretation,
    cfg: EvalConfig,
    top: Option<Value>,
    parameters: HashMap<usize, Vec<String>>,
    cache: HashMap<CacheKey, Rc<ValuationTable>>,
    next_generation: u64,
    reports: Vec<FixpointReport>,
}

impl<'a> Evaluator<'a> {
    pub fn new(interp: &'a Interpretation, cfg: EvalConfig) -> Evaluator<'a> {
        Evaluator {
            interp,
            cfg,
            top: None,
            parameters: HashMap::new(),
            cache: HashMap::new(),
            next_generation: 0,
            reports: Vec::new(),
        }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    /// Reports of all fixed points computed so far (only with `trace` on).
    pub fn reports(&self) -> &[FixpointReport] {
        &self.reports
    }

    /// `π⟦f⟧` for a sentence `f`.
    pub fn evaluate(&mut self, f: &Formula) -> Result<Value> {
        let g = prepare(f, self.interp)?;
        let carrier = self.interp.carrier().clone();
        if g.has_gfp_in_nnf() {
            match carrier {
                Carrier::Viterbi | Carrier::Tropical | Carrier::Lukasiewicz => return self.evaluate_symbolic(&g),
                Carrier::Nat | Carrier::NatInf | Carrier::NatPoly => {
                    return Err(Error::GfpUnsupportedCarrier(carrier.to_string()))
                }
                _ => {}
            }
        }
        self.evaluate_nnf(&g)
    }

    /// Evaluates an NNF sentence directly in the interpretation's carrier.
    fn evaluate_nnf(&mut self, g: &Formula) -> Result<Value> {
        self.cache.clear();
        self.parameters.clear();
        let mut env = Env::default();
        self.eval(g, &mut env)
    }

    /// Infinite absorptive carriers: evaluate over fresh tokens in `S∞[X]`
    /// and map back through the evaluation homomorphism. Literals valued `0`
    /// or `1` keep their value, every other literal gets its own token.
    fn evaluate_symbolic(&mut self, g: &Formula) -> Result<Value> {
        let target = self.interp.carrier().clone();
        let mut assignment = BTreeMap::new();
        let symbolic = self.interp.map(Carrier::Sorp, |_, v| {
            Ok(if v.is_zero() {
                Value::Sorp(SorpPoly::zero(false))
            } else if v.is_one() {
                Value::Sorp(SorpPoly::one(false))
            } else {
                let t = Token::new(&format!("t{}", assignment.len()));
                assignment.insert(t.clone(), v.clone());
                Value::Sorp(SorpPoly::token(t, false))
            })
        })?;
        let mut inner = Evaluator::new(&symbolic, self.cfg.clone());
        let value = inner.evaluate_nnf(g)?;
        self.reports.extend(inner.reports);
        let poly = value.as_sorp().expect("sorp evaluation");
        eval_hom(poly, &assignment, &target)
    }

    fn top(&mut self) -> Result<Value> {
        if let Some(t) = &self.top {
            return Ok(t.clone());
        }
        let carrier = self.interp.carrier();
        let top = match carrier {
            Carrier::Why => {
                let tokens = self.interp.tokens();
                if tokens.len() > self.cfg.why_token_cap {
                    return Err(Error::GfpUnsupportedCarrier(format!(
                        "why over {} tokens (cap {})",
                        tokens.len(),
                        self.cfg.why_token_cap
                    )));
                }
                Value::Why(TokenSets::why_top(&tokens))
            }
            c => c.top().ok_or_else(|| Error::GfpUnsupportedCarrier(c.to_string()))?,
        };
        self.top = Some(top.clone());
        Ok(top)
    }

    fn resolve(&self, t: &Term, env: &Env) -> Result<usize> {
        match t {
            Term::Var(v) => env.var(v).ok_or_else(|| Error::MalformedFormula(format!("variable {v} is not bound"))),
            Term::Const(c) => self
                .interp
                .universe()
                .index(c)
                .ok_or_else(|| Error::MalformedFormula(format!("{c} is not a universe element"))),
        }
    }

    fn resolve_all(&self, ts: &[Term], env: &Env) -> Result<Vec<usize>> {
        ts.iter().map(|t| self.resolve(t, env)).collect()
    }

    fn eval(&mut self, f: &Formula, env: &mut Env) -> Result<Value> {
        let carrier = self.interp.carrier();
        match f {
            Formula::Rel { rel, args } | Formula::NegRel { rel, args } => {
                let tuple = self.resolve_all(args, env)?;
                let positive = matches!(f, Formula::Rel { .. });
                self.interp.get(rel, &tuple, positive).cloned().ok_or_else(|| Error::UnknownRelation(rel.clone()))
            }
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                let same = self.resolve(a, env)? == self.resolve(b, env)?;
                Ok(carrier.from_bool(same == matches!(f, Formula::Eq(..))))
            }
            Formula::Or(a, b) => {
                let x = self.eval(a, env)?;
                if x.is_one() && carrier.caps().absorptive {
                    return Ok(x);
                }
                x.add(&self.eval(b, env)?)
            }
            Formula::And(a, b) => {
                let x = self.eval(a, env)?;
                if x.is_zero() {
                    return Ok(x);
                }
                x.mul(&self.eval(b, env)?)
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let universal = matches!(f, Formula::Forall(..));
                let mut acc = if universal { carrier.one() } else { carrier.zero() };
                for e in 0..self.interp.universe().len() {
                    env.vars.push((v.clone(), e));
                    let x = self.eval(body, env);
                    env.vars.pop();
                    acc = if universal { acc.mul(&x?)? } else { acc.add(&x?)? };
                    if universal && acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            Formula::Not(_) => Err(Error::MalformedFormula("negation above a non-atomic formula after NNF".into())),
            Formula::FpVar { rel, args } => {
                let tuple = self.resolve_all(args, env)?;
                let binding = env
                    .fps
                    .iter()
                    .rev()
                    .find(|b| b.rel == *rel)
                    .ok_or_else(|| Error::MalformedFormula(format!("fixed-point variable {rel} is not bound")))?;
                Ok(binding.table.get(&tuple).clone())
            }
            Formula::Fix { args, .. } => {
                let table = self.fix_table(f, env)?;
                let tuple = self.resolve_all(args, env)?;
                Ok(table.get(&tuple).clone())
            }
        }
    }

    fn fix_table(&mut self, f: &Formula, env: &mut Env) -> Result<Rc<ValuationTable>> {
        let Formula::Fix { kind, rel, vars, body, .. } = f else { unreachable!("fix_table on a non-binder") };
        let node = f as *const Formula as usize;
        let params = self
            .parameters
            .entry(node)
            .or_insert_with(|| {
                let mut free = body.free_vars();
                for v in vars {
                    free.remove(v);
                }
                free.into_iter().collect()
            })
            .clone();
        let key = CacheKey {
            node,
            vars: params.iter().map(|p| env.var(p).unwrap_or(usize::MAX)).collect(),
            generations: env.fps.iter().map(|b| b.generation).collect(),
        };
        if let Some(t) = self.cache.get(&key) {
            return Ok(t.clone());
        }
        let n = self.interp.universe().len();
        let arity = vars.len();
        let top = match kind {
            FixKind::Gfp => Some(self.top()?),
            FixKind::Lfp => None,
        };
        let carrier = self.interp.carrier().clone();
        let cfg = self.cfg.clone();
        let mut step = |g: &ValuationTable| self.apply_body(rel, vars, body, g, env);
        let report = match top {
            None => lfp_iterate(&mut step, rel, arity, n, &carrier, &cfg)?,
            Some(top) => gfp_iterate_widened(&mut step, rel, arity, n, &top, &cfg)?,
        };
        let table = Rc::new(report.table.clone());
        if self.cfg.trace && self.reports.len() < MAX_REPORTS {
            self.reports.push(report);
        }
        self.cache.insert(key, table.clone());
        Ok(table)
    }

    /// One application of the update operator of `[fp rel(vars). body]`.
    fn apply_body(
        &mut self,
        rel: &str,
        vars: &[String],
        body: &Formula,
        g: &ValuationTable,
        env: &mut Env,
    ) -> Result<ValuationTable> {
        self.next_generation += 1;
        env.fps.push(FpBinding { rel: rel.into(), table: Rc::new(g.clone()), generation: self.next_generation });
        let depth = env.vars.len();
        let universe = self.interp.universe();
        let mut entries = Vec::with_capacity(g.len());
        let mut result = Ok(());
        for i in 0..g.len() {
            let tuple = universe.tuple(vars.len(), i);
            env.vars.extend(vars.iter().cloned().zip(tuple));
            let v = self.eval(body, env);
            env.vars.truncate(depth);
            match v {
                Ok(v) => entries.push(v),
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        env.fps.pop();
        result?;
        Ok(ValuationTable::from_entries(rel, vars.len(), universe.len(), entries))
    }
}

/// Positivity check, NNF and well-formedness against the interpretation.
fn prepare(f: &Formula, interp: &Interpretation) -> Result<Formula> {
    check_positivity(f)?;
    let g = nnf(f)?;
    g.check_well_formed(interp.vocabulary(), Some(interp.universe()))?;
    if !g.is_sentence() {
        let free: Vec<String> = g.free_vars().into_iter().collect();
        return Err(Error::MalformedFormula(format!("free variables {}", free.join(", "))));
    }
    Ok(g)
}

/// `π⟦f⟧` with the default configuration.
pub fn evaluate(f: &Formula, interp: &Interpretation) -> Result<Value> {
    Evaluator::new(interp, EvalConfig::default()).evaluate(f)
}

/// The update operator `g ↦ F(g)` of a binder `[fp R(x̄). θ](ā)` whose body
/// has no free variables besides `x̄`.
pub struct UpdateOperator<'a> {
    evaluator: Evaluator<'a>,
    rel: String,
    vars: Vec<String>,
    body: Formula,
}

impl<'a> UpdateOperator<'a> {
    pub fn new(fix: &Formula, interp: &'a Interpretation, cfg: EvalConfig) -> Result<UpdateOperator<'a>> {
        let g = prepare(fix, interp)?;
        let Formula::Fix { rel, vars, body, .. } = g else {
            return Err(Error::MalformedFormula("expected a fixed-point formula".into()));
        };
        Ok(UpdateOperator { evaluator: Evaluator::new(interp, cfg), rel, vars, body: *body })
    }

    pub fn relation(&self) -> &str {
        &self.rel
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn apply(&mut self, g: &ValuationTable) -> Result<ValuationTable> {
        self.evaluator.cache.clear();
        self.evaluator.parameters.clear();
        let mut env = Env::default();
        self.evaluator.apply_body(&self.rel, &self.vars, &self.body, g, &mut env)
    }
}

#[cfg(test)]
mod tests;
