//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so that every verdict is printed, also
//! when the run succeeds. Exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fixprov_core::check::{self, CheckConfig};
use fixprov_core::eval::{gfp_iterate_widened, gfp_widened_candidate, identity_assignment, specialize, UpdateOperator};
use fixprov_core::game::DEFAULT_STRATEGY_CAP;
use fixprov_core::problem::{parse_assignment, parse_problem};
use fixprov_core::syntax::parse_formula;
use fixprov_core::{Carrier, EvalConfig, Evaluator, Formula, Game, Interpretation, PositionalStrategy, Value};

const INF_PATH: &str = "gfp R(x). exists y. (E(x,y) & R(y)) @ (u)";
const BUCHI: &str = "gfp X(x). lfp Y(x). exists y. (E(x,y) & (X(y) & P(y) | Y(y))) @ (x) @ (u)";

const BUCHI_PROBLEM: &str = r#"{
    "carrier": "sorpdual",
    "universe": ["u", "v"],
    "relations": {"E": 2, "P": 1},
    "most_general": true,
    "annotations": [
        ["E(u,u)", "x1"], ["E(u,v)", "x2"], ["E(v,v)", "y1"], ["E(v,u)", "y2"],
        ["P(u)", "0"], ["P(v)", "1"]
    ]
}"#;

/// Runtime budgets.
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const BUCHI_BUDGET: Duration = Duration::from_secs(5);
const SUITES_BUDGET: Duration = Duration::from_secs(60);
const SUITE_CASES: usize = 200;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn problem(json: &str) -> Interpretation {
    parse_problem(json).unwrap_or_else(|e| panic!("problem file: {e}"))
}

/// A problem over `{u, v}` with binary `E`, the listed edges annotated and
/// every other atom false.
fn graph(carrier: &str, edges: &[(&str, &str)]) -> Interpretation {
    let annotations: Vec<String> = edges.iter().map(|(e, v)| format!("[\"{e}\", \"{v}\"]")).collect();
    problem(&format!(
        r#"{{"carrier": "{carrier}", "universe": ["u", "v"], "relations": {{"E": 2}},
            "annotations": [{}], "default_pos": "0", "default_neg": "1"}}"#,
        annotations.join(", ")
    ))
}

fn formula(text: &str, pi: &Interpretation) -> Formula {
    parse_formula(text, pi.vocabulary(), Some(pi.universe())).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn eval(text: &str, pi: &Interpretation) -> Result<Value, String> {
    Evaluator::new(pi, EvalConfig::default()).evaluate(&formula(text, pi)).map_err(|e| e.to_string())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn infinite_path_example() -> Verdict {
    let ((a, b), t) = timed(|| {
        let a = eval(INF_PATH, &graph("sorp", &[("E(u,v)", "x"), ("E(v,v)", "y")]));
        let b = eval(INF_PATH, &graph("sorp", &[("E(u,v)", "x"), ("E(v,v)", "y"), ("E(u,u)", "z")]));
        (a, b)
    });
    let (a, b) = (a?.to_string(), b?.to_string());
    ensure!(a == "x*y^inf", "path u->v->v: got {a}");
    ensure!(b == "x*y^inf + z^inf", "with loop at u: got {b}");
    ensure!(t < EXAMPLE_BUDGET, "took {t:?}");
    Ok(format!("{a} | {b} in {:.3}s", t.as_secs_f64()))
}

fn viterbi_specialization() -> Verdict {
    let pi = graph("sorp", &[("E(u,v)", "x"), ("E(v,v)", "y")]);
    let value = eval(INF_PATH, &pi)?;
    let mut out = Vec::new();
    for (y, expected) in [("1", "1"), ("999/1000", "0")] {
        let h = parse_assignment(&format!(r#"{{"x": "1", "y": "{y}"}}"#), &Carrier::Viterbi).unwrap();
        let via_poly = specialize(&value, &h, &Carrier::Viterbi).map_err(|e| e.to_string())?;
        ensure!(via_poly.to_string() == expected, "y = {y}: specialized to {via_poly}");
        // The same number, computed directly in the Viterbi semiring.
        let direct = eval(INF_PATH, &graph("viterbi", &[("E(u,v)", "1"), ("E(v,v)", y)]))?;
        ensure!(direct == via_poly, "y = {y}: direct evaluation gives {direct}, specialization {via_poly}");
        out.push(format!("y={y} -> {via_poly}"));
    }
    Ok(out.join(", "))
}

fn why_example() -> Verdict {
    let pi = graph("why", &[("E(u,u)", "x"), ("E(u,v)", "y")]);
    let v = eval(INF_PATH, &pi)?.to_string();
    ensure!(v == "x + x*y", "got {v}");
    Ok(v)
}

/// Positions reachable from the root when Verifier plays `s`.
fn reachable_choices(g: &Game, s: &PositionalStrategy) -> BTreeMap<usize, usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![g.root()];
    while let Some(v) = stack.pop() {
        if !seen.insert(v) {
            continue;
        }
        match s.choice.get(&v) {
            Some(&w) => stack.push(w),
            None => stack.extend(g.successors(v)),
        }
    }
    s.choice.iter().filter(|(v, _)| seen.contains(v)).map(|(&v, &w)| (v, w)).collect()
}

fn buchi_example() -> Verdict {
    let (result, t) = timed(|| -> Verdict {
        let pi = problem(BUCHI_PROBLEM);
        let f = formula(BUCHI, &pi);
        let value = eval(BUCHI, &pi)?;
        ensure!(value.to_string() == "x2*y1^inf + x2^inf*y2^inf", "evaluation {value}");
        let g = Game::for_sentence(&f, &pi).map_err(|e| e.to_string())?;
        ensure!(g.strategy_count() == 16, "{} positional strategies", g.strategy_count());
        let mut nonzero = Vec::new();
        for s in g.strategies(DEFAULT_STRATEGY_CAP).map_err(|e| e.to_string())? {
            let v = g.strategy_value(&pi, &s, g.root()).map_err(|e| e.to_string())?;
            if !v.is_zero() {
                nonzero.push((reachable_choices(&g, &s), v.to_string()));
            }
        }
        // Two of the nonzero strategies differ only at the disjunction at u,
        // which neither of them reaches.
        let raw = nonzero.len();
        let distinct: BTreeSet<_> = nonzero.into_iter().collect();
        let values: BTreeSet<&str> = distinct.iter().map(|(_, v)| v.as_str()).collect();
        ensure!(distinct.len() == 2, "{} nonzero strategies up to unreachable choices", distinct.len());
        ensure!(values == BTreeSet::from(["x2*y1^inf", "x2^inf*y2^inf"]), "nonzero values {values:?}");
        let sup = g.positional_strategy_sup(&pi, g.root(), DEFAULT_STRATEGY_CAP).map_err(|e| e.to_string())?;
        ensure!(sup == value, "strategy supremum {sup} != evaluation {value}");
        Ok(format!(
            "{value}; 16 strategies, 2 nonzero up to unreachable choices ({raw} as raw choice maps); sup == eval"
        ))
    });
    let detail = result?;
    ensure!(t < BUCHI_BUDGET, "took {t:?}");
    Ok(format!("{detail} in {:.3}s", t.as_secs_f64()))
}

fn negated_buchi_example() -> Verdict {
    let pi = problem(BUCHI_PROBLEM);
    let text = format!("!({BUCHI})");
    let f = formula(&text, &pi);
    let value = eval(&text, &pi)?;
    let expected = "~x1*~x2 + ~x1*~y1^2*~y2^2 + ~x2^inf + ~y1^inf*~y2^inf";
    ensure!(value.to_string() == expected, "evaluation {value}");

    let g = Game::for_sentence(&f, &pi).map_err(|e| e.to_string())?;
    // Verifier refutes the edges u->u, v->v and v->u directly and follows
    // only u->v, where the X(v) branch is taken.
    let mut s = g.strategy(0);
    for (from, to) in [
        ("!E(u,u) | (X(u) | !P(u)) & Y(u)", "!E(u,u)"),
        ("!E(u,v) | (X(v) | !P(v)) & Y(v)", "(X(v) | !P(v)) & Y(v)"),
        ("X(v) | !P(v)", "X(v)"),
        ("!E(v,v) | (X(v) | !P(v)) & Y(v)", "!E(v,v)"),
        ("!E(v,u) | (X(u) | !P(u)) & Y(u)", "!E(v,u)"),
    ] {
        let v = g.find(from).ok_or(format!("no position {from}"))?;
        let w = g.find(to).ok_or(format!("no position {to}"))?;
        s.choice.insert(v, w);
    }
    let chosen = g.strategy_value(&pi, &s, g.root()).map_err(|e| e.to_string())?;
    ensure!(chosen.to_string() == "~x1*~y1^2*~y2^2", "strategy {chosen}");

    let sup = g.positional_strategy_sup(&pi, g.root(), DEFAULT_STRATEGY_CAP).map_err(|e| e.to_string())?;
    ensure!(sup == value, "strategy supremum {sup} != evaluation");

    let h = identity_assignment(value.tokens().iter(), &Carrier::PosBool).map_err(|e| e.to_string())?;
    let projected = specialize(&value, &h, &Carrier::PosBool).map_err(|e| e.to_string())?;
    ensure!(projected.to_string() == "~x2 + ~y1*~y2", "PosBool projection {projected}");
    Ok(format!("{value}; chosen strategy {chosen}; sup == eval; PosBool {projected}"))
}

fn lukasiewicz_counterexample() -> Verdict {
    const G: &str = "gfp P(y). (R(a) & P(y)) @ (a)";
    let gfp_g = |x: &str| -> Result<(Value, Value), String> {
        let pi = problem(&format!(
            r#"{{"carrier": "lukasiewicz", "universe": ["a"], "relations": {{"R": 1}},
                "annotations": [["R(a)", "{x}"]], "default_neg": "0"}}"#
        ));
        let cfg = EvalConfig::default();
        let mut op = UpdateOperator::new(&formula(G, &pi), &pi, cfg.clone()).map_err(|e| e.to_string())?;
        let top = Carrier::Lukasiewicz.one();
        let report = gfp_iterate_widened(|g| op.apply(g), "P", 1, 1, &top, &cfg).map_err(|e| e.to_string())?;
        Ok((report.table.entries()[0].clone(), eval(G, &pi)?))
    };
    let zero = Carrier::Lukasiewicz.zero();
    let mut sup_of_gfps = zero.clone();
    for n in 1..=10u32 {
        let x = format!("{n}/{}", n + 1);
        let (iterated, evaluated) = gfp_g(&x)?;
        ensure!(iterated == zero, "gfp(g_{x}) by iteration is {iterated}");
        ensure!(evaluated == zero, "gfp(g_{x}) by evaluation is {evaluated}");
        sup_of_gfps = sup_of_gfps.add(&iterated).map_err(|e| e.to_string())?;
    }
    let (at_one, at_one_eval) = gfp_g("1")?;
    ensure!(at_one.is_one() && at_one_eval.is_one(), "gfp(g_1) is {at_one} / {at_one_eval}");
    ensure!(sup_of_gfps != at_one, "sup-preservation would hold");
    Ok(format!("gfp(g_x_n) = 0 for n = 1..10, gfp(g_1) = 1: G(sup x_n) = {at_one} != {sup_of_gfps} = sup G(x_n)"))
}

fn property_suites() -> Verdict {
    let cfg = CheckConfig { cases: SUITE_CASES, ..CheckConfig::default() };
    let (reports, t) = timed(|| check::run_all(&cfg));
    for r in &reports {
        println!("    {r}");
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    ensure!(failed.is_empty(), "failing suites: {}", failed.join(", "));
    ensure!(reports.iter().all(|r| r.cases >= SUITE_CASES), "a suite checked fewer than {SUITE_CASES} cases");
    ensure!(t < SUITES_BUDGET, "took {t:?}");
    Ok(format!(
        "{} suites x {SUITE_CASES} cases, seed {:#x}, zero failures in {:.1}s",
        reports.len(),
        cfg.seed,
        t.as_secs_f64()
    ))
}

/// Infinite paths from `u` on a graph over `{u, v}` with optional edges
/// `a = uu`, `b = uv`, `c = vv`, `d = vu`.
///
/// Every infinite path from `u` eventually loops at `u`, loops at `v`, or
/// alternates. The smallest witnesses are `a^∞`, `b·c^∞` and `b^∞·d^∞`; any
/// other path uses a superset of the tokens of one of them that applies.
fn hand_derived_paths(a: bool, b: bool, c: bool, d: bool) -> String {
    let mut terms = Vec::new();
    if a {
        terms.push("a^inf");
    }
    if b && c {
        terms.push("b*c^inf");
    }
    if b && d {
        terms.push("b^inf*d^inf");
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn verified_gfp_instance(pi: &Interpretation, text: &str) -> Result<String, String> {
    let cfg = EvalConfig { trace: true, ..EvalConfig::default() };
    let mut ev = Evaluator::new(pi, cfg.clone());
    let value = ev.evaluate(&formula(text, pi)).map_err(|e| e.to_string())?;
    let report = ev.reports().last().ok_or("no fixed-point report")?.clone();
    ensure!(report.verified, "report not verified");
    let b = report.widening_threshold.ok_or("no widening threshold")?;

    let fix = formula(text, pi);
    let mut op = UpdateOperator::new(&fix, pi, cfg.clone()).map_err(|e| e.to_string())?;
    let top = pi.carrier().one();
    let c = &report.table;
    ensure!(op.apply(c).map_err(|e| e.to_string())? == *c, "F(c) != c");
    let (again, _) =
        gfp_widened_candidate(|g| op.apply(g), c.relation(), c.arity(), c.universe_len(), &top, 2 * b, &cfg)
            .map_err(|e| e.to_string())?;
    ensure!(
        again.render(pi.universe()) == c.render(pi.universe()),
        "threshold {} gives\n{}instead of\n{}",
        2 * b,
        again.render(pi.universe()),
        c.render(pi.universe())
    );
    Ok(value.to_string())
}

fn gfp_widening_soundness() -> Verdict {
    let report = check::run_suite("gfp-widening", &CheckConfig { cases: SUITE_CASES, ..CheckConfig::default() })
        .expect("gfp-widening suite exists");
    ensure!(report.passed(), "{report}");
    let mut instances = 0;
    for mask in 0..16u32 {
        let bit = |i: u32| mask & (1 << i) != 0;
        let edges: Vec<(&str, &str)> = [("E(u,u)", "a"), ("E(u,v)", "b"), ("E(v,v)", "c"), ("E(v,u)", "d")]
            .into_iter()
            .enumerate()
            .filter(|(i, _)| bit(*i as u32))
            .map(|(_, e)| e)
            .collect();
        let pi = graph("sorp", &edges);
        let got = verified_gfp_instance(&pi, INF_PATH).map_err(|e| format!("edges {edges:?}: {e}"))?;
        let expected = hand_derived_paths(bit(0), bit(1), bit(2), bit(3));
        ensure!(got == expected, "edges {edges:?}: widened gfp gives {got}, hand-derived {expected}");
        instances += 1;
    }
    let buchi = verified_gfp_instance(&problem(BUCHI_PROBLEM), BUCHI)?;
    ensure!(buchi == "x2*y1^inf + x2^inf*y2^inf", "Buchi instance gives {buchi}");
    instances += 1;
    Ok(format!(
        "suite: {} cases, {} skipped; {instances} hand-derived instances verified with F(c) = c and 2B reproduction",
        report.cases, report.skipped
    ))
}

fn desk_scale_note() -> Verdict {
    Ok("no benchmark numbers exist to reproduce; acceptance rests on the exact values above and the property suites"
        .into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("infinite paths in S-infinity", infinite_path_example),
        ("Viterbi specialization", viterbi_specialization),
        ("why-provenance of infinite paths", why_example),
        ("Buchi game and evaluation", buchi_example),
        ("negated Buchi game and evaluation", negated_buchi_example),
        ("Lukasiewicz counterexample", lukasiewicz_counterexample),
        ("property suites", property_suites),
        ("gfp widening soundness", gfp_widening_soundness),
        ("desk-scale note", desk_scale_note),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
