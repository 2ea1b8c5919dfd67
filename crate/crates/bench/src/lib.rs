//! Fixtures shared by the benchmarks.

use fixprov_core::problem::parse_problem;
use fixprov_core::syntax::parse_formula;
use fixprov_core::{Formula, Interpretation, SorpPoly};

pub const INF_PATH: &str = "gfp R(x). exists y. (E(x,y) & R(y)) @ (u)";
pub const BUCHI: &str = "gfp X(x). lfp Y(x). exists y. (E(x,y) & (X(y) & P(y) | Y(y))) @ (x) @ (u)";

/// The Büchi instance: four edge tokens on two nodes, `P` true at `v` only.
pub fn buchi_problem() -> Interpretation {
    parse_problem(
        r#"{"carrier": "sorpdual", "universe": ["u", "v"], "relations": {"E": 2, "P": 1},
            "most_general": true,
            "annotations": [["E(u,u)", "x1"], ["E(u,v)", "x2"], ["E(v,v)", "y1"], ["E(v,u)", "y2"],
                            ["P(u)", "0"], ["P(v)", "1"]]}"#,
    )
    .expect("valid problem")
}

/// A complete graph on `n` nodes with a distinct token per edge.
pub fn complete_graph(n: usize) -> Interpretation {
    let nodes: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut annotations = Vec::new();
    for a in &nodes {
        for b in &nodes {
            annotations.push(format!(r#"["E({a},{b})", "e_{a}_{b}"]"#));
        }
    }
    let universe: Vec<String> = nodes.iter().map(|n| format!("\"{n}\"")).collect();
    parse_problem(&format!(
        r#"{{"carrier": "sorp", "universe": [{}], "relations": {{"E": 2}},
            "annotations": [{}], "default_neg": "1"}}"#,
        universe.join(", "),
        annotations.join(", ")
    ))
    .expect("valid problem")
}

/// Reachability from the first node, a least fixed point.
pub fn reachability(pi: &Interpretation) -> Formula {
    let first = pi.universe().name(0);
    let last = pi.universe().name(pi.universe().len() - 1);
    let text = format!("lfp T(x). x = {last} | (exists y. E(x,y) & T(y)) @ ({first})");
    parse_formula(&text, pi.vocabulary(), Some(pi.universe())).expect("valid formula")
}

pub fn formula(text: &str, pi: &Interpretation) -> Formula {
    parse_formula(text, pi.vocabulary(), Some(pi.universe())).expect("valid formula")
}

/// `(t1 + ... + tk)^2` with `k` tokens: `k(k+1)/2` incomparable monomials.
pub fn square_of_sum(k: usize) -> SorpPoly {
    let sum = (1..=k).map(|i| format!("t{i}")).collect::<Vec<_>>().join(" + ");
    let p = SorpPoly::parse(&sum, false).expect("valid polynomial");
    p.mul(&p)
}
