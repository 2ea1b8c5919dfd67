use rand::Rng;

use super::gen::{self, FormulaGen, Rng8};
use super::{run_cases, CheckConfig, Outcome, SuiteReport};
use crate::error::Result;
use crate::eval::{
    boolean_model_check, evaluate, gfp_iterate_widened, gfp_widened_candidate, specialize, Assignment, EvalConfig,
    UpdateOperator,
};
use crate::extnat::ExtNat;
use crate::game::Game;
use crate::logic::{nnf, Formula, Interpretation, Structure, Term, Universe};
use crate::semiring::{Carrier, Value};
use crate::sorp::{eval_hom, Monomial, SorpPoly};
use crate::token::Token;

const STRATEGY_CAP: u128 = 4096;

fn first_failure(checks: &[(&str, bool)]) -> Option<String> {
    checks.iter().find(|(_, ok)| !ok).map(|(name, _)| name.to_string())
}

fn outcome(failed: Option<String>, context: impl FnOnce() -> String) -> Outcome {
    match failed {
        None => Outcome::Pass,
        Some(name) => Outcome::Fail(format!("{name}: {}", context())),
    }
}

pub(super) fn semiring_axioms(cfg: &CheckConfig) -> SuiteReport {
    let carriers = gen::all_carriers();
    run_cases("semiring-axioms", cfg, |rng| {
        for k in &carriers {
            let (a, b, c) = (gen::value(rng, k), gen::value(rng, k), gen::value(rng, k));
            let (zero, one) = (k.zero(), k.one());
            let checks = [
                ("add-assoc", a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?),
                ("mul-assoc", a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?),
                ("add-comm", a.add(&b)? == b.add(&a)?),
                ("mul-comm", a.mul(&b)? == b.mul(&a)?),
                ("add-zero", a.add(&zero)? == a),
                ("mul-one", a.mul(&one)? == a),
                ("distributivity", a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?),
                ("annihilation", a.mul(&zero)?.is_zero()),
                ("zero-ne-one", zero != one),
                ("order-extends", a.natural_leq(&a.add(&b)?)?),
                ("order-reflexive", a.natural_leq(&a)?),
            ];
            if let Some(name) = first_failure(&checks) {
                return Ok(Outcome::Fail(format!("{k} {name}: a={a:?} b={b:?} c={c:?}")));
            }
        }
        Ok(Outcome::Pass)
    })
}

pub(super) fn absorption(cfg: &CheckConfig) -> SuiteReport {
    let carriers: Vec<Carrier> = gen::all_carriers().into_iter().filter(|k| k.caps().absorptive).collect();
    run_cases("absorption", cfg, |rng| {
        for k in &carriers {
            let (a, b) = (gen::value(rng, k), gen::value(rng, k));
            let checks = [
                ("a+ab=a", a.add(&a.mul(&b)?)? == a),
                ("a<=1", a.natural_leq(&k.one())?),
                ("ab<=b", a.mul(&b)?.natural_leq(&b)?),
                ("idempotent", a.add(&a)? == a),
            ];
            if let Some(name) = first_failure(&checks) {
                return Ok(Outcome::Fail(format!("{k} {name}: a={a:?} b={b:?}")));
            }
        }
        Ok(Outcome::Pass)
    })
}

pub(super) fn infinitary_power(cfg: &CheckConfig) -> SuiteReport {
    let carriers: Vec<Carrier> = gen::all_carriers().into_iter().filter(Carrier::is_absorptive_continuous).collect();
    run_cases("infinitary-power", cfg, |rng| {
        for k in &carriers {
            let (a, b) = (gen::value(rng, k), gen::value(rng, k));
            let ai = a.infinitary_power()?;
            let n = ExtNat::Fin(rng.random_range(1..=4));
            let checks = [
                ("(a+b)^inf", a.add(&b)?.infinitary_power()? == ai.add(&b.infinitary_power()?)?),
                ("a^inf=pow(inf)", a.pow(ExtNat::Inf)? == ai),
                ("a^inf<=a^n", ai.natural_leq(&a.pow(n)?)?),
                ("a^inf*a^inf", ai.mul(&ai)? == ai),
                ("(ab)^inf", a.mul(&b)?.infinitary_power()? == ai.mul(&b.infinitary_power()?)?),
            ];
            if let Some(name) = first_failure(&checks) {
                return Ok(Outcome::Fail(format!("{k} {name}: a={a:?} b={b:?}")));
            }
        }
        Ok(Outcome::Pass)
    })
}

fn counts(rng: &mut Rng8, len: usize) -> Vec<ExtNat> {
    (0..len)
        .map(|_| match rng.random_range(0..6) {
            0 => ExtNat::ZERO,
            5 => ExtNat::Inf,
            n => ExtNat::Fin(n),
        })
        .collect()
}

fn counted(pool: &[Value], c: &[ExtNat]) -> Vec<(Value, ExtNat)> {
    pool.iter().cloned().zip(c.iter().copied()).collect()
}

pub(super) fn counted_products(cfg: &CheckConfig) -> SuiteReport {
    let carriers: Vec<Carrier> = gen::all_carriers().into_iter().filter(Carrier::is_absorptive_continuous).collect();
    let targets = [Carrier::Viterbi, Carrier::Bool, Carrier::Tropical, Carrier::Lukasiewicz];
    run_cases("counted-products", cfg, |rng| {
        for k in &carriers {
            let pool: Vec<Value> = (0..3).map(|_| gen::value(rng, k)).collect();
            let (m1, m2) = (counts(rng, 3), counts(rng, 3));
            let merged: Vec<ExtNat> = m1.iter().zip(&m2).map(|(a, b)| *a + *b).collect();
            let lhs = k.counted_product(&counted(&pool, &m1))?.mul(&k.counted_product(&counted(&pool, &m2))?)?;
            let rhs = k.counted_product(&counted(&pool, &merged))?;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!("{k} partition: {pool:?} {m1:?} {m2:?}")));
            }
        }
        // Evaluation homomorphisms out of S∞[X].
        let target = &targets[rng.random_range(0..targets.len())];
        let assignment: Assignment = ["a", "b", "c"].iter().map(|t| (Token::new(t), gen::value(rng, target))).collect();
        let h = |p: &SorpPoly| eval_hom(p, &assignment, target);
        let polys: Vec<SorpPoly> = (0..3).map(|_| gen::poly(rng, false)).collect();
        let m = counts(rng, 3);
        let pool: Vec<Value> = polys.iter().cloned().map(Value::Sorp).collect();
        let product = Carrier::Sorp.counted_product(&counted(&pool, &m))?;
        let images: Vec<Value> = polys.iter().map(h).collect::<Result<_>>()?;
        let (p, q) = (&polys[0], &polys[1]);
        let checks = [
            ("h(prod)", h(product.as_sorp().expect("sorp"))? == target.counted_product(&counted(&images, &m))?),
            ("h(p+q)", h(&p.add(q))? == images[0].add(&images[1])?),
            ("h(pq)", h(&p.mul(q))? == images[0].mul(&images[1])?),
        ];
        Ok(outcome(first_failure(&checks), || format!("{target} {polys:?} {m:?} {assignment:?}")))
    })
}

fn all_infinite(dual: bool) -> SorpPoly {
    let factors = ["a", "b", "c"].iter().map(|t| (Token::new(t), ExtNat::Inf));
    SorpPoly::from_monomial(Monomial::from_factors(factors), dual)
}

pub(super) fn antichains(cfg: &CheckConfig) -> SuiteReport {
    run_cases("antichains", cfg, |rng| {
        let dual = rng.random_bool(0.5);
        let (p, q, r) = (gen::poly(rng, dual), gen::poly(rng, dual), gen::poly(rng, dual));
        let n = gen::exponent(rng);
        let t = rng.random_range(1..=4);
        let results = [
            p.add(&q),
            p.mul(&q),
            p.pow(n),
            p.meet(&q),
            p.widen(t),
            p.infinitary_power(),
            SorpPoly::sup([&p, &q, &r], dual),
        ];
        for (i, res) in results.iter().enumerate() {
            if !res.is_antichain() {
                return Ok(Outcome::Fail(format!("result {i} is not an antichain: {res}")));
            }
            if dual && res.monomials().iter().any(Monomial::has_complementary_pair) {
                return Ok(Outcome::Fail(format!("result {i} has a complementary pair: {res}")));
            }
        }
        let meet = &results[3];
        let checks = [
            ("p<=p+q", p.leq(&results[0])),
            ("q<=p+q", q.leq(&results[0])),
            ("pq<=p", results[1].leq(&p)),
            ("meet<=p", meet.leq(&p)),
            ("meet<=q", meet.leq(&q)),
            ("meet-greatest", !(r.leq(&p) && r.leq(&q)) || r.leq(meet)),
            ("widen<=p", results[4].leq(&p)),
            ("widen-idempotent", results[4].widen(t) == results[4]),
            ("p^inf<=p", results[5].leq(&p)),
            ("sup", results[6] == p.add(&q).add(&r)),
            ("chain-positive", dual || p.is_zero() || all_infinite(false).leq(&p)),
            ("widen-nonzero", p.is_zero() || !results[4].is_zero()),
        ];
        Ok(outcome(first_failure(&checks), || format!("p={p} q={q} r={r} n={n} t={t}")))
    })
}

/// The descending chain `A + B·cⁱ`.
struct Chain {
    a: SorpPoly,
    b: SorpPoly,
    c: SorpPoly,
}

impl Chain {
    fn random(rng: &mut Rng8, dual: bool) -> Chain {
        Chain {
            a: gen::poly(rng, dual),
            b: gen::poly(rng, dual),
            c: SorpPoly::from_monomial(gen::monomial(rng, dual), dual),
        }
    }

    fn at(&self, i: u32) -> SorpPoly {
        self.a.add(&self.b.mul(&self.c.pow(ExtNat::Fin(i))))
    }

    /// `⊓ᵢ (A + B·cⁱ) = A + B·c^∞`, monomial by monomial.
    fn infimum(&self) -> SorpPoly {
        self.a.add(&self.b.mul(&self.c.infinitary_power()))
    }
}

/// The value at which the widened sequence `widen(f(i), t)` stabilizes.
fn widened_limit(f: impl Fn(u32) -> SorpPoly, t: u32) -> Option<SorpPoly> {
    let mut prev = f(0).widen(t);
    for i in 1..10_000 {
        let next = f(i).widen(t);
        if next == prev {
            return Some(prev);
        }
        prev = next;
    }
    None
}

fn max_finite_exponent(p: &SorpPoly) -> u32 {
    p.monomials().iter().flat_map(|m| m.factors().iter().filter_map(|(_, e)| e.finite())).max().unwrap_or(0)
}

pub(super) fn splitting(cfg: &CheckConfig) -> SuiteReport {
    run_cases("splitting", cfg, |rng| {
        let dual = rng.random_bool(0.5);
        let (p, q) = (Chain::random(rng, dual), Chain::random(rng, dual));
        // Above every exponent of the fixed parts (and of their products),
        // widening only touches exponents that grow along the chains.
        let fixed = [&p.a, &p.b, &q.a, &q.b].map(max_finite_exponent);
        let t = fixed.iter().sum::<u32>() + 1;
        let lim = |f: &dyn Fn(u32) -> SorpPoly, t| widened_limit(f, t);
        let (Some(lp), Some(lq)) = (lim(&|i| p.at(i), t), lim(&|i| q.at(i), t)) else {
            return Ok(Outcome::Fail("widened chain did not stabilize".into()));
        };
        let sum = lim(&|i| p.at(i).add(&q.at(i)), t);
        let prod = lim(&|i| p.at(i).mul(&q.at(i)), t);
        let checks = [
            ("limit=infimum", lp == p.infimum() && lq == q.infimum()),
            ("threshold-stable", lim(&|i| p.at(i), 2 * t).as_ref() == Some(&lp)),
            ("descending", p.at(1).leq(&p.at(0)) && p.at(5).leq(&p.at(4))),
            ("split-add", sum == Some(lp.add(&lq))),
            ("split-mul", prod == Some(lp.mul(&lq))),
        ];
        Ok(outcome(first_failure(&checks), || {
            format!("A={} B={} c={} / A'={} B'={} c'={}", p.a, p.b, p.c, q.a, q.b, q.c)
        }))
    })
}

fn random_sentence(rng: &mut Rng8) -> (Universe, Formula) {
    let u = gen::universe(rng);
    let f = FormulaGen::new(rng, &u).sentence(4);
    (u, f)
}

pub(super) fn fundamental_property(cfg: &CheckConfig) -> SuiteReport {
    let targets = [Carrier::Viterbi, Carrier::PosBool, Carrier::Bool];
    run_cases("fundamental-property", cfg, |rng| {
        let (u, f) = random_sentence(rng);
        let mg = Interpretation::most_general(gen::vocabulary(), u)?;
        let target = &targets[rng.random_range(0..targets.len())];
        let tokens: Vec<Token> = mg.tokens().into_iter().collect();
        let h = gen::dual_assignment(rng, &tokens, target);
        fundamental_case(&f, &mg, &h, target)
    })
}

fn fundamental_case(f: &Formula, pi: &Interpretation, h: &Assignment, target: &Carrier) -> Result<Outcome> {
    let lhs = specialize(&evaluate(f, pi)?, h, target)?;
    let h_pi = pi.map(target.clone(), |_, v| specialize(v, h, target))?;
    let rhs = evaluate(f, &h_pi)?;
    Ok(if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{f} in {target}: h(π⟦f⟧) = {lhs}, (h∘π)⟦f⟧ = {rhs}"))
    })
}

pub(super) fn truth_preservation(cfg: &CheckConfig) -> SuiteReport {
    run_cases("truth-preservation", cfg, |rng| {
        let (u, f) = random_sentence(rng);
        let s = gen::structure(rng, &u, &gen::vocabulary());
        let pi = gen::model_defining(rng, &s)?;
        let truth = boolean_model_check(&f, &s)?;
        let value = evaluate(&f, &pi)?;
        let boolean = evaluate(&f, &Interpretation::from_structure(Carrier::Bool, &s)?)?;
        let checks = [("sorpdual", value.is_zero() != truth), ("bool", boolean == Value::Bool(truth))];
        Ok(outcome(first_failure(&checks), || format!("{f}: model check {truth}, value {value}")))
    })
}

pub(super) fn monotonicity(cfg: &CheckConfig) -> SuiteReport {
    let carriers = [Carrier::Sorp, Carrier::Viterbi, Carrier::PosBool];
    run_cases("monotonicity", cfg, |rng| {
        let (u, f) = random_sentence(rng);
        let k = &carriers[rng.random_range(0..carriers.len())];
        let upper = gen::interpretation(rng, k, &u, &gen::vocabulary())?;
        // In absorptive carriers a·r ≤ a, so this lowers every literal.
        let lower = upper.map(k.clone(), |_, v| v.mul(&gen::value(rng, k)))?;
        let (lo, hi) = (evaluate(&f, &lower)?, evaluate(&f, &upper)?);
        Ok(outcome((!lo.natural_leq(&hi)?).then(|| "monotone".to_string()), || format!("{f} in {k}: {lo} > {hi}")))
    })
}

fn sup_case(f: &Formula, pi: &Interpretation, exact: bool) -> Result<Outcome> {
    let game = Game::for_sentence(f, pi)?;
    if game.strategy_count() > STRATEGY_CAP {
        return Ok(Outcome::Skip);
    }
    let sup = game.positional_strategy_sup(pi, game.root(), STRATEGY_CAP)?;
    let value = evaluate(f, pi)?;
    let ok = if exact { sup == value } else { sup.natural_leq(&value)? };
    Ok(if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{f} in {}: strategy sup {sup}, evaluation {value}", pi.carrier()))
    })
}

pub(super) fn strategy_sup(cfg: &CheckConfig) -> SuiteReport {
    run_cases("strategy-sup", cfg, |rng| {
        let (u, f) = random_sentence(rng);
        let mg = Interpretation::most_general(gen::vocabulary(), u)?;
        let pi = if rng.random_bool(0.5) {
            mg
        } else {
            let tokens: Vec<Token> = mg.tokens().into_iter().collect();
            let h = crate::eval::identity_assignment(&tokens, &Carrier::PosBool)?;
            mg.map(Carrier::PosBool, |_, v| specialize(v, &h, &Carrier::PosBool))?
        };
        sup_case(&f, &pi, false)
    })
}

pub(super) fn boolean_game(cfg: &CheckConfig) -> SuiteReport {
    run_cases("boolean-game", cfg, |rng| {
        let (u, f) = random_sentence(rng);
        let s = gen::structure(rng, &u, &gen::vocabulary());
        let pi = Interpretation::from_structure(Carrier::Bool, &s)?;
        let truth = boolean_model_check(&f, &s)?;
        match sup_case(&f, &pi, true)? {
            Outcome::Pass if evaluate(&f, &pi)? != Value::Bool(truth) => {
                Ok(Outcome::Fail(format!("{f}: winner differs from model check {truth}")))
            }
            other => Ok(other),
        }
    })
}

pub(super) fn nnf_equivalence(cfg: &CheckConfig) -> SuiteReport {
    run_cases("nnf-equivalence", cfg, |rng| {
        let (u, f) = random_sentence(rng);
        let s = gen::structure(rng, &u, &gen::vocabulary());
        let g = nnf(&f)?;
        let (a, b) = (boolean_model_check(&f, &s)?, boolean_model_check(&g, &s)?);
        Ok(outcome((a != b).then(|| "nnf".to_string()), || format!("{f} is {a}, its NNF {g} is {b}")))
    })
}

/// Runs the widened gfp iteration of a top-level `gfp` sentence and checks
/// every verified result: it is an exact fixed point, a fresh widened
/// descent at twice the accepting threshold reproduces it, and it agrees
/// with `evaluate` (and with `expected` when given).
fn gfp_case(f: &Formula, pi: &Interpretation, expected: Option<&Value>) -> Result<Outcome> {
    let Formula::Fix { args, .. } = f else {
        return Ok(Outcome::Fail(format!("{f} is not a fixed-point formula")));
    };
    let u = pi.universe();
    let tuple: Vec<usize> = args
        .iter()
        .map(|t| match t {
            Term::Const(c) => u.index(c).expect("element"),
            Term::Var(_) => unreachable!("sentence"),
        })
        .collect();
    let cfg = EvalConfig::default();
    let top = pi.carrier().one();
    let mut op = UpdateOperator::new(f, pi, cfg.clone())?;
    let (rel, arity) = (op.relation().to_string(), op.arity());
    let report = match gfp_iterate_widened(|g| op.apply(g), &rel, arity, u.len(), &top, &cfg) {
        Ok(r) => r,
        Err(e) if e.is_divergence() => return Ok(Outcome::Skip),
        Err(e) => return Err(e),
    };
    if !report.verified {
        return Ok(Outcome::Skip);
    }
    let doubled = match report.widening_threshold {
        Some(b) => gfp_widened_candidate(|g| op.apply(g), &rel, arity, u.len(), &top, 2 * b, &cfg)?.0,
        None => report.table.clone(),
    };
    let value = report.table.get(&tuple).clone();
    let checks = [
        ("fixed-point", op.apply(&report.table)? == report.table),
        ("doubling", doubled.render(u) == report.table.render(u)),
        ("evaluate", evaluate(f, pi)? == value),
        ("expected", expected.is_none_or(|e| *e == value)),
    ];
    Ok(outcome(first_failure(&checks), || format!("{f}: table {} expected {expected:?}", report.table.render(u))))
}

/// `π⟦gfp R(x). ∃y. E(x,y) ∧ R(y) @ (u)⟧` on a graph with edge values
/// `0`, `1` or a token, as the sum over successor choices of the lasso
/// from `u`: stem edges once, cycle edges infinitely often.
pub(super) fn lasso_value(edges: &[Vec<Value>]) -> SorpPoly {
    let n = edges.len();
    let succ: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| !edges[i][j].is_zero()).collect()).collect();
    let mut choice = vec![0usize; n];
    let mut monomials = Vec::new();
    loop {
        let mut seen = vec![None; n];
        let mut path = Vec::new();
        let mut cur = 0;
        let cycle_start = loop {
            if let Some(pos) = seen[cur] {
                break Some(pos);
            }
            if succ[cur].is_empty() {
                break None;
            }
            seen[cur] = Some(path.len());
            let next = succ[cur][choice[cur]];
            path.push((cur, next));
            cur = next;
        };
        if let Some(start) = cycle_start {
            let mut m = Monomial::one();
            for (k, (i, j)) in path.iter().enumerate() {
                if let Some(p) = edges[*i][*j].as_sorp() {
                    for t in p.tokens() {
                        let e = if k >= start { ExtNat::Inf } else { ExtNat::ONE };
                        m = m.mul(&Monomial::from_factors([(t.clone(), e)]));
                    }
                }
            }
            monomials.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                return SorpPoly::maximals(monomials, false);
            }
            if succ[i].is_empty() {
                i += 1;
                continue;
            }
            choice[i] += 1;
            if choice[i] < succ[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn edge_graph(rng: &mut Rng8, u: &Universe) -> Result<(Vec<Vec<Value>>, Interpretation)> {
    let n = u.len();
    let k = Carrier::Sorp;
    let edges: Vec<Vec<Value>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match rng.random_range(0..6) {
                    0 | 1 => k.zero(),
                    2 => k.one(),
                    _ => Value::Sorp(SorpPoly::token(Token::new(&format!("e{i}{j}")), false)),
                })
                .collect()
        })
        .collect();
    let pi = Interpretation::from_fn(k.clone(), u.clone(), gen::vocabulary(), |lit| {
        if lit.rel == "E" && lit.positive {
            let i = u.index(&lit.args[0]).expect("element");
            let j = u.index(&lit.args[1]).expect("element");
            Ok(edges[i][j].clone())
        } else {
            Ok(k.zero())
        }
    })?;
    Ok((edges, pi))
}

pub(super) fn gfp_widening(cfg: &CheckConfig) -> SuiteReport {
    let inf_path = crate::syntax::parse_formula("gfp R(x). exists y. (E(x,y) & R(y)) @ (u)", &gen::vocabulary(), None)
        .expect("formula parses");
    run_cases("gfp-widening", cfg, |rng| {
        let u = gen::universe(rng);
        if rng.random_bool(0.5) {
            let (edges, pi) = edge_graph(rng, &u)?;
            let expected = Value::Sorp(lasso_value(&edges));
            return gfp_case(&inf_path, &pi, Some(&expected));
        }
        let f = FormulaGen::new(rng, &u).gfp_sentence(4);
        let pi = match rng.random_range(0..3) {
            0 => Interpretation::most_general(gen::vocabulary(), u)?,
            1 => {
                let s = gen::structure(rng, &u, &gen::vocabulary());
                gen::model_defining(rng, &s)?
            }
            _ => gen::interpretation(rng, &Carrier::Sorp, &u, &gen::vocabulary())?,
        };
        gfp_case(&f, &pi, None)
    })
}

/// Checks for one sentence under one interpretation: the strategy bound,
/// monotonicity under random weakening, and for polynomial carriers the
/// commutation of evaluation with random specializations.
pub fn check_problem(f: &Formula, pi: &Interpretation, cfg: &CheckConfig) -> Vec<SuiteReport> {
    let k = pi.carrier().clone();
    let mut out = Vec::new();
    if k.is_absorptive_continuous() {
        let single = CheckConfig { cases: 1, ..*cfg };
        out.push(run_cases("strategy-sup", &single, |_| sup_case(f, pi, false)));
        out.push(run_cases("monotonicity", cfg, |rng| {
            let lower = pi.map(k.clone(), |_, v| v.mul(&gen::value(rng, &k)))?;
            let (lo, hi) = (evaluate(f, &lower)?, evaluate(f, pi)?);
            Ok(outcome((!lo.natural_leq(&hi)?).then(|| "monotone".to_string()), || format!("{lo} > {hi}")))
        }));
    }
    if matches!(k, Carrier::Sorp | Carrier::SorpDual) {
        let tokens: Vec<Token> = pi.tokens().into_iter().collect();
        let targets = [Carrier::Viterbi, Carrier::PosBool, Carrier::Bool];
        out.push(run_cases("fundamental-property", cfg, |rng| {
            let target = &targets[rng.random_range(0..targets.len())];
            let h = if k == Carrier::SorpDual {
                let mut all = tokens.clone();
                all.extend(tokens.iter().map(Token::dual));
                gen::dual_assignment(rng, &all, target)
            } else {
                tokens.iter().map(|t| (t.clone(), gen::value(rng, target))).collect()
            };
            fundamental_case(f, pi, &h, target)
        }));
    }
    if pi.is_model_compatible() {
        if let Ok(models) = pi.compatible_models(crate::logic::DEFAULT_MODEL_CAP) {
            let mut next = 0;
            let single = CheckConfig { cases: models.len(), ..*cfg };
            out.push(run_cases("compatible-models", &single, |_| {
                let s = &models[next];
                next += 1;
                model_case(f, pi, s)
            }));
        }
    }
    out
}

/// Specializing a model-compatible `π` to a compatible model `s` gives the
/// model-defining Boolean interpretation of `s`, whose value is the truth
/// value of `f` in `s`.
fn model_case(f: &Formula, pi: &Interpretation, s: &Structure) -> Result<Outcome> {
    let mut h = Assignment::new();
    for (lit, v) in pi.literals() {
        for t in v.tokens() {
            h.insert(t, Value::Bool(gen::literal_holds(s, &lit)));
        }
    }
    let value = specialize(&evaluate(f, pi)?, &h, &Carrier::Bool)?;
    let truth = boolean_model_check(f, s)?;
    Ok(outcome((value != Value::Bool(truth)).then(|| "model".to_string()), || {
        format!("specialized value {value}, model check {truth}")
    }))
}
