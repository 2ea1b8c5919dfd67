use super::*;
use crate::logic::{Structure, Vocabulary};
use crate::syntax::parse_formula;
use crate::testkit::{buchi_pi, interp, uv, BUCHI, INF_PATH};

fn eval_text(text: &str, pi: &Interpretation) -> Result<Value> {
    let f = parse_formula(text, pi.vocabulary(), Some(pi.universe()))?;
    evaluate(&f, pi)
}

#[test]
fn infinite_path_in_sorp() {
    let pi = interp("sorp", &[("E", 2)], &[("E(u,v)", "x"), ("E(v,v)", "y")], &[]);
    assert_eq!(eval_text(INF_PATH, &pi).unwrap().to_string(), "x*y^inf");
    let pi = interp("sorp", &[("E", 2)], &[("E(u,v)", "x"), ("E(v,v)", "y"), ("E(u,u)", "z")], &[]);
    assert_eq!(eval_text(INF_PATH, &pi).unwrap().to_string(), "x*y^inf + z^inf");
}

#[test]
fn infinite_path_in_why() {
    let pi = interp("why", &[("E", 2)], &[("E(u,u)", "x"), ("E(u,v)", "y")], &[]);
    assert_eq!(eval_text(INF_PATH, &pi).unwrap().to_string(), "x + x*y");
}

#[test]
fn buchi_example_and_its_negation() {
    let pi = buchi_pi();
    assert!(pi.is_model_compatible());
    let v = eval_text(BUCHI, &pi).unwrap();
    assert_eq!(v.to_string(), "x2*y1^inf + x2^inf*y2^inf");
    let n = eval_text(&format!("!({BUCHI})"), &pi).unwrap();
    assert_eq!(n.to_string(), "~x1*~x2 + ~x1*~y1^2*~y2^2 + ~x2^inf + ~y1^inf*~y2^inf");
}

#[test]
fn viterbi_direct_matches_symbolic_specialization() {
    let pi = interp("viterbi", &[("E", 2)], &[("E(u,v)", "1"), ("E(v,v)", "999/1000")], &[]);
    assert!(eval_text(INF_PATH, &pi).unwrap().is_zero());
    let pi = interp("viterbi", &[("E", 2)], &[("E(u,v)", "1/2"), ("E(v,v)", "1")], &[]);
    assert_eq!(eval_text(INF_PATH, &pi).unwrap().to_string(), "1/2");
}

#[test]
fn reachability_lfp() {
    let reach = "lfp R(x). x = v | (exists y. E(x,y) & R(y)) @ (u)";
    let pi = interp("sorp", &[("E", 2)], &[("E(u,v)", "x")], &[]);
    assert_eq!(eval_text(reach, &pi).unwrap().to_string(), "x");
    let pi = interp("bool", &[("E", 2)], &[("E(u,v)", "1")], &[]);
    assert_eq!(eval_text(reach, &pi).unwrap().as_bool(), Some(true));
    let pi = interp("bool", &[("E", 2)], &[("E(v,u)", "1")], &[]);
    assert_eq!(eval_text(reach, &pi).unwrap().as_bool(), Some(false));
}

#[test]
fn gfp_rejected_for_counting_carriers() {
    let pi = interp("nat", &[("E", 2)], &[("E(u,v)", "1")], &[]);
    assert!(matches!(eval_text(INF_PATH, &pi), Err(Error::GfpUnsupportedCarrier(_))));
}

#[test]
fn boolean_oracle() {
    let vocab = Vocabulary::new([("E", 2)]).unwrap();
    let mut s = Structure::new(uv(), vocab.clone());
    s.insert_named("E", &["u", "v"]).unwrap();
    let f = parse_formula(INF_PATH, &vocab, Some(&uv())).unwrap();
    assert!(!boolean_model_check(&f, &s).unwrap());
    s.insert_named("E", &["v", "v"]).unwrap();
    assert!(boolean_model_check(&f, &s).unwrap());
}

#[test]
fn single_node_gfp_operator() {
    let pi = interp("sorp", &[("E", 2)], &[("E(v,v)", "y")], &[]);
    let fix = parse_formula("gfp R(x). E(x,x) & R(x) @ (v)", pi.vocabulary(), Some(pi.universe())).unwrap();
    let mut op = UpdateOperator::new(&fix, &pi, EvalConfig::default()).unwrap();
    let cfg = EvalConfig::default();
    let top = Carrier::Sorp.one();
    let report = gfp_iterate_widened(|g: &ValuationTable| op.apply(g), "R", 1, 2, &top, &cfg).unwrap();
    assert!(report.verified);
    assert_eq!(report.table.get(&[1]).to_string(), "y^inf");
    assert_eq!(report.table.get(&[0]).to_string(), "0");
    assert_eq!(report.widening_threshold, Some(8));
}
