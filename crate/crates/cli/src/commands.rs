use std::fmt::{self, Write as _};
use std::path::Path;

use fixprov_core::check::{self, CheckConfig, SuiteReport};
use fixprov_core::eval::{identity_assignment, specialize};
use fixprov_core::logic::nnf as to_nnf;
use fixprov_core::problem::{parse_assignment, parse_problem_as};
use fixprov_core::syntax::parse_formula;
use fixprov_core::{Carrier, Error, EvalConfig, Evaluator, Formula, Game, Interpretation, Value, Vocabulary};

use crate::{CheckArgs, EvalArgs, GameArgs, Input, NnfArgs, Widening};

#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input: files, formulas, carrier names.
    Usage(String),
    Eval(Error),
    /// Something was computed, but a check on it failed.
    Rejected {
        output: String,
        reason: String,
    },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Eval(e) if e.is_divergence() => 3,
            Failure::Eval(_) | Failure::Rejected { .. } => 2,
        }
    }

    pub fn partial_output(&self) -> Option<&str> {
        match self {
            Failure::Rejected { output, .. } => Some(output),
            _ => None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Eval(e) => write!(f, "{e}"),
            Failure::Rejected { reason, .. } => f.write_str(reason),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Eval(e)
    }
}

type CmdResult = Result<String, Failure>;

fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn formula_text(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}

fn parse_carrier(name: &str) -> Result<Carrier, Failure> {
    Carrier::parse(name).map_err(usage)
}

fn load(input: &Input) -> Result<(Interpretation, Formula), Failure> {
    let carrier = input.carrier.as_deref().map(parse_carrier).transpose()?;
    let interp = parse_problem_as(&read(&input.problem)?, carrier.as_ref()).map_err(usage)?;
    let text = formula_text(&input.formula)?;
    let f = parse_formula(&text, interp.vocabulary(), Some(interp.universe())).map_err(usage)?;
    Ok((interp, f))
}

fn eval_config(w: &Widening, trace: bool) -> Result<EvalConfig, Failure> {
    let mut cfg = EvalConfig::from_env().map_err(usage)?;
    if let Some(b) = w.widen_b0 {
        cfg.widen_b0 = b;
    }
    if let Some(b) = w.widen_bmax {
        cfg.widen_bmax = b;
    }
    if cfg.widen_b0 == 0 || cfg.widen_b0 > cfg.widen_bmax {
        return Err(usage(format!(
            "widening thresholds must satisfy 1 <= b0 <= bmax (got {} and {})",
            cfg.widen_b0, cfg.widen_bmax
        )));
    }
    cfg.trace = trace;
    Ok(cfg)
}

pub fn nnf(a: &NnfArgs) -> CmdResult {
    let text = formula_text(&a.formula)?;
    let f = match &a.problem {
        Some(path) => {
            let interp = parse_problem_as(&read(path)?, None).map_err(usage)?;
            parse_formula(&text, interp.vocabulary(), Some(interp.universe()))
        }
        None => {
            let mut rels = Vec::new();
            for entry in &a.relations {
                let (name, arity) = entry
                    .split_once(':')
                    .and_then(|(n, k)| Some((n.trim().to_string(), k.trim().parse::<usize>().ok()?)))
                    .ok_or_else(|| usage(format!("expected NAME:ARITY, got {entry:?}")))?;
                rels.push((name, arity));
            }
            parse_formula(&text, &Vocabulary::new(rels).map_err(usage)?, None)
        }
    }
    .map_err(usage)?;
    Ok(format!("{}\n", to_nnf(&f).map_err(usage)?))
}

pub fn eval(a: &EvalArgs) -> CmdResult {
    let (interp, f) = load(&a.input)?;
    let cfg = eval_config(&a.widening, a.trace)?;
    let mut ev = Evaluator::new(&interp, cfg);
    let result = ev.evaluate(&f);
    if a.trace {
        for r in ev.reports() {
            eprint!("{}", r.render(interp.universe()));
        }
    }
    let mut value = result?;
    if let Some(pair) = &a.specialize {
        let target = parse_carrier(&pair[0])?;
        let assignment = if pair[1] == "identity" {
            identity_assignment(value.tokens().iter(), &target)?
        } else {
            parse_assignment(&read(Path::new(&pair[1]))?, &target).map_err(usage)?
        };
        value = specialize(&value, &assignment, &target)?;
    }
    Ok(format!("{value}\n"))
}

/// `==` when `sup` and `eval` coincide, `<` when `sup` is strictly below.
fn compare(sup: &Value, eval: &Value) -> Result<Option<&'static str>, Error> {
    Ok(if sup == eval {
        Some("==")
    } else if sup.natural_leq(eval)? {
        Some("<")
    } else {
        None
    })
}

pub fn game(a: &GameArgs) -> CmdResult {
    let (interp, f) = load(&a.input)?;
    let cfg = eval_config(&a.widening, false)?;
    let g = Game::for_sentence(&f, &interp)?;
    let dot = g.to_dot(Some(&interp));
    let mut out = String::new();
    match &a.dot {
        Some(path) => std::fs::write(path, dot).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => out.push_str(&dot),
    }
    if a.strategies || a.check_sum {
        log::info!("{} positional strategies", g.strategy_count());
    }
    if a.strategies {
        out.push_str("index\twinning\tvalue\n");
        for (i, s) in g.strategies(a.strategy_cap)?.enumerate() {
            let winning = g.winning_infinite_plays(&s, g.root())?;
            let value = g.strategy_value(&interp, &s, g.root())?;
            let _ = writeln!(out, "{i}\t{winning}\t{value}");
        }
    }
    if a.check_sum {
        let sup = g.positional_strategy_sup(&interp, g.root(), a.strategy_cap)?;
        let value = Evaluator::new(&interp, cfg).evaluate(&f)?;
        match compare(&sup, &value)? {
            Some(rel) => {
                let _ = writeln!(out, "check-sum\t{sup}\t{rel}\t{value}");
            }
            None => {
                let _ = writeln!(out, "check-sum\t{sup}\t!<=\t{value}");
                return Err(Failure::Rejected {
                    output: out,
                    reason: "strategy supremum is not below the evaluation".into(),
                });
            }
        }
    }
    Ok(out)
}

fn report_lines(reports: &[SuiteReport]) -> CmdResult {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Failure::Rejected { output: out, reason: format!("{failed} suite(s) failed") });
    }
    Ok(out)
}

pub fn check(a: &CheckArgs) -> CmdResult {
    if a.list {
        return Ok(check::suite_names().iter().map(|n| format!("{n}\n")).collect());
    }
    let cfg = CheckConfig { seed: a.seed, cases: a.cases };
    if let (Some(problem), Some(formula)) = (&a.problem, &a.formula) {
        let input = Input { problem: problem.clone(), carrier: a.carrier.clone(), formula: formula.clone() };
        let (interp, f) = load(&input)?;
        return report_lines(&check::check_problem(&f, &interp, &cfg));
    }
    if a.formula.is_some() {
        return Err(usage("a formula needs --problem"));
    }
    let names: Vec<String> = if a.suites.is_empty() {
        check::suite_names().iter().map(|s| s.to_string()).collect()
    } else {
        a.suites.clone()
    };
    let known = check::suite_names();
    if let Some(name) = names.iter().find(|n| !known.contains(&n.as_str())) {
        return Err(usage(format!("unknown suite {name:?}; try `fixprov check --list`")));
    }
    let mut reports = Vec::new();
    for name in &names {
        let r = check::run_suite(name, &cfg).expect("suite name was validated");
        log::info!("{r}");
        reports.push(r);
    }
    report_lines(&reports)
}
