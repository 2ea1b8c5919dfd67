use super::*;

fn run(name: &str) {
    let cfg = CheckConfig { seed: 7, cases: 60 };
    let report = run_suite(name, &cfg).expect("suite exists");
    assert!(report.passed(), "{report}");
    assert_eq!(report.cases, 60);
}

#[test]
fn semiring_axioms() {
    run("semiring-axioms");
}

#[test]
fn absorption() {
    run("absorption");
}

#[test]
fn infinitary_power() {
    run("infinitary-power");
}

#[test]
fn counted_products() {
    run("counted-products");
}

#[test]
fn antichains() {
    run("antichains");
}

#[test]
fn splitting() {
    run("splitting");
}

#[test]
fn fundamental_property() {
    run("fundamental-property");
}

#[test]
fn truth_preservation() {
    run("truth-preservation");
}

#[test]
fn monotonicity() {
    run("monotonicity");
}

#[test]
fn strategy_sup() {
    run("strategy-sup");
}

#[test]
fn boolean_game() {
    run("boolean-game");
}

#[test]
fn nnf_equivalence() {
    run("nnf-equivalence");
}

#[test]
fn gfp_widening() {
    run("gfp-widening");
}

#[test]
fn lasso_oracle_on_the_two_cycle_graph() {
    use crate::semiring::Carrier;
    let k = Carrier::Sorp;
    let t = |s: &str| k.parse_value(s).unwrap();
    let edges = vec![vec![t("a"), t("b")], vec![t("c"), t("d")]];
    assert_eq!(suites::lasso_value(&edges).to_string(), "a^inf + b^inf*c^inf + b*d^inf");
    let edges = vec![vec![t("0"), t("x")], vec![t("0"), t("y")]];
    assert_eq!(suites::lasso_value(&edges).to_string(), "x*y^inf");
}

#[test]
fn generated_formulas_are_well_formed_sentences() {
    use rand::SeedableRng;
    let mut rng = gen::Rng8::seed_from_u64(11);
    let vocab = gen::vocabulary();
    let mut with_fixpoints = 0;
    for _ in 0..300 {
        let u = gen::universe(&mut rng);
        let f = gen::FormulaGen::new(&mut rng, &u).sentence(4);
        assert!(f.depth() <= 4, "{f}");
        assert!(f.is_sentence(), "{f}");
        f.check_well_formed(&vocab, Some(&u)).unwrap();
        crate::logic::check_positivity(&f).unwrap();
        with_fixpoints += usize::from(f.contains_fixpoint());
    }
    assert!(with_fixpoints > 100, "{with_fixpoints}");
}

#[test]
fn suites_are_deterministic() {
    let cfg = CheckConfig { seed: 3, cases: 20 };
    let a = run_suite("fundamental-property", &cfg).unwrap();
    let b = run_suite("fundamental-property", &cfg).unwrap();
    assert_eq!((a.cases, a.skipped, a.failures), (b.cases, b.skipped, b.failures));
}
