use fixprov_bench::{buchi_problem, complete_graph, formula, reachability, square_of_sum, BUCHI, INF_PATH};
use fixprov_core::evaluate;

#[test]
fn square_of_sum_has_all_degree_two_monomials() {
    for k in 1..6 {
        assert_eq!(square_of_sum(k).monomials().len(), k * (k + 1) / 2);
    }
}

#[test]
fn complete_graph_fixtures_evaluate() {
    let pi = complete_graph(2);
    let v = evaluate(&reachability(&pi), &pi).unwrap();
    assert_eq!(v.to_string(), "e_n0_n1");

    let pi = complete_graph(1);
    let f = formula(&INF_PATH.replace("(u)", "(n0)"), &pi);
    assert_eq!(evaluate(&f, &pi).unwrap().to_string(), "e_n0_n0^inf");
}

#[test]
fn buchi_fixture() {
    let pi = buchi_problem();
    let v = evaluate(&formula(BUCHI, &pi), &pi).unwrap();
    assert_eq!(v.to_string(), "x2*y1^inf + x2^inf*y2^inf");
}
