use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn p(text: &str) -> SorpPoly {
    SorpPoly::parse(text, false).unwrap()
}

fn pd(text: &str) -> SorpPoly {
    SorpPoly::parse(text, true).unwrap()
}

fn m(text: &str) -> Monomial {
    let poly = p(text);
    assert_eq!(poly.monomials().len(), 1);
    poly.monomials()[0].clone()
}

#[test]
fn absorption_between_monomials() {
    assert!(m("x").absorbs(&m("x^2*y")));
    assert!(!m("x^inf*y^3").absorbs(&m("x^inf")));
    assert!(m("x^inf").absorbs(&m("x^inf*y^3")));
    assert!(m("x*y").absorbs(&m("x*y")));
    assert!(m("1").absorbs(&m("z^inf")));
    assert!(!m("x").absorbs(&m("y")));
}

#[test]
fn monomial_products() {
    assert_eq!(m("x").mul(&m("x^inf")), m("x^inf"));
    assert_eq!(m("x*y").mul(&m("y^2*z")), m("x*y^3*z"));
    let x = Monomial::var(Token::new("x"));
    let nx = Monomial::var(Token::negative("x"));
    assert!(x.mul_checked(&nx, true).is_none());
    assert!(x.mul_checked(&nx, false).is_some());
}

#[test]
fn exponents_saturate() {
    let big = Monomial::from_factors([(Token::new("x"), ExtNat::Fin(u32::MAX))]);
    assert_eq!(big.mul(&m("x")), m("x^inf"));
}

#[test]
fn maximal_monomials() {
    assert_eq!(SorpPoly::maximals([m("x"), m("x*y")], false).to_string(), "x");
    assert_eq!(SorpPoly::maximals([m("x^2"), m("x*y")], false).to_string(), "x^2 + x*y");
    assert!(SorpPoly::maximals([], false).is_zero());
    assert_eq!(p("x + x*y + x^inf*z"), p("x"));
}

#[test]
fn arithmetic_examples() {
    assert_eq!(p("x + y").mul(&p("x")), p("x^2 + x*y"));
    let (a, b) = (p("x + y^2"), p("x*z + y"));
    assert_eq!(a.add(&a.mul(&b)), a);
    assert_eq!(pd("x + ~y").mul(&pd("y")), pd("x*y"));
    assert!(pd("~x").mul(&pd("x")).is_zero());
}

#[test]
fn order_examples() {
    assert!(p("x^2").leq(&p("x")));
    assert!(!p("x").leq(&p("y")));
    assert!(!p("y").leq(&p("x")));
    assert!(p("x*y^inf").leq(&p("x")));
    assert!(SorpPoly::zero(false).leq(&p("x")));
    assert!(p("x + y").leq(&SorpPoly::one(false)));
}

#[test]
fn sup_and_meet() {
    assert_eq!(SorpPoly::sup([&p("x^2"), &p("x^2 + x*y")], false), p("x^2 + x*y"));
    assert_eq!(p("x").meet(&p("y")), p("x*y"));
    let q = p("x^2*y + z^inf");
    assert_eq!(q.meet(&SorpPoly::one(false)), q);
}

/// All polynomials over `x, y` with exponents in `{0, 1, 2, ∞}`.
fn small_polys() -> Vec<SorpPoly> {
    let exps = [ExtNat::ZERO, ExtNat::ONE, ExtNat::Fin(2), ExtNat::Inf];
    let monos: Vec<Monomial> = exps
        .iter()
        .flat_map(|&i| exps.iter().map(move |&j| Monomial::from_factors([(Token::new("x"), i), (Token::new("y"), j)])))
        .collect();
    let all: std::collections::HashSet<SorpPoly> = (0u32..1 << monos.len())
        .map(|mask| {
            let chosen = monos.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, m)| m.clone());
            SorpPoly::maximals(chosen, false)
        })
        .collect();
    all.into_iter().collect()
}

#[test]
fn meet_is_greatest_lower_bound_among_small_polynomials() {
    let polys = small_polys();
    for (a, b) in [(p("x"), p("y")), (p("x^2 + y"), p("x*y + y^2")), (p("x^inf + y"), p("x"))] {
        let meet = a.meet(&b);
        assert!(meet.leq(&a) && meet.leq(&b));
        for lower in polys.iter().filter(|q| q.leq(&a) && q.leq(&b)) {
            assert!(lower.leq(&meet), "{lower} is a lower bound of {a} and {b} above {meet}");
        }
    }
}

#[test]
fn infinitary_powers() {
    assert_eq!(p("x + y").infinitary_power(), p("x^inf + y^inf"));
    assert!(SorpPoly::one(false).infinitary_power().is_one());
    // Squaring until the widened value stabilizes.
    let q = p("x^2*y");
    let mut power = q.clone();
    let limit = loop {
        let next = power.mul(&power);
        if next.widen(64) == power.widen(64) {
            break power.widen(64);
        }
        power = next;
    };
    assert_eq!(limit, p("x^inf*y^inf"));
    assert_eq!(q.infinitary_power(), limit);
    assert_eq!(q.pow(ExtNat::Inf), limit);
}

#[test]
fn widening_examples() {
    assert_eq!(p("x^3*y").widen(3), p("x^inf*y"));
    assert_eq!(p("x^2*y").widen(3), p("x^2*y"));
    assert_eq!(p("x^3 + x^inf*y").widen(3), p("x^inf"));
}

#[test]
fn evaluation_homomorphisms() {
    let vit = Carrier::Viterbi;
    let assign = |pairs: &[(&str, &str)], target: &Carrier| -> BTreeMap<Token, Value> {
        pairs.iter().map(|(t, v)| (Token::parse(t).unwrap(), target.parse_value(v).unwrap())).collect()
    };
    let path = p("x*y^inf");
    assert!(eval_hom(&path, &assign(&[("x", "1"), ("y", "1")], &vit), &vit).unwrap().is_one());
    assert!(eval_hom(&path, &assign(&[("x", "1"), ("y", "999/1000")], &vit), &vit).unwrap().is_zero());
    let pb = Carrier::PosBool;
    let v = p("x2*y1^inf + x2^inf*y2^inf");
    let h = assign(&[("x2", "x2"), ("y1", "y1"), ("y2", "y2")], &pb);
    assert_eq!(eval_hom(&v, &h, &pb).unwrap().to_string(), "x2*y1 + x2*y2");
    assert!(eval_hom(&SorpPoly::zero(false), &h, &pb).unwrap().is_zero());
    assert!(eval_hom(&SorpPoly::one(false), &h, &pb).unwrap().is_one());
    assert!(matches!(eval_hom(&v, &h, &Carrier::Nat), Err(Error::NotAbsorptive(_))));
    assert!(matches!(eval_hom(&p("z"), &h, &pb), Err(Error::UnassignedToken(_))));
    let bad = assign(&[("x", "1"), ("~x", "1/2")], &vit);
    assert!(matches!(eval_hom(&pd("x"), &bad, &vit), Err(Error::DualityViolated { .. })));
}

#[test]
fn dropping_exponents() {
    assert_eq!(drop_exponents(&p("x2*y1^inf + x2^inf*y2^inf")).to_string(), "x2*y1 + x2*y2");
    let neg = pd("~x1*~x2 + ~x1*~y1^2*~y2^2 + ~x2^inf + ~y1^inf*~y2^inf");
    assert_eq!(drop_exponents(&neg).to_string(), "~x2 + ~y1*~y2");
    assert!(drop_exponents(&SorpPoly::zero(false)).is_zero());
}

#[test]
fn canonical_text() {
    assert_eq!(p("y^inf*x + z^inf").to_string(), "x*y^inf + z^inf");
    assert_eq!(p("1").to_string(), "1");
    assert_eq!(p("0").to_string(), "0");
    assert!(SorpPoly::parse("x^", false).is_err());
    assert!(SorpPoly::parse("x + * y", false).is_err());
}

fn arb_poly(dual: bool) -> impl Strategy<Value = SorpPoly> {
    let exponent = prop_oneof![4 => (1u32..4).prop_map(ExtNat::Fin), 1 => Just(ExtNat::Inf)];
    let factor = (0u8..3, any::<bool>(), exponent).prop_map(move |(t, neg, e)| {
        let name = format!("x{t}");
        (if dual && neg { Token::negative(&name) } else { Token::new(&name) }, e)
    });
    prop::collection::vec(prop::collection::vec(factor, 0..3), 0..4)
        .prop_map(move |ms| SorpPoly::maximals(ms.into_iter().map(Monomial::from_factors), dual))
}

/// Expand, drop complementary pairs under duality, then remove every
/// monomial that another one absorbs by pairwise comparison.
fn naive_product(a: &SorpPoly, b: &SorpPoly, dual: bool) -> BTreeSet<Monomial> {
    let all: Vec<Monomial> = a
        .monomials()
        .iter()
        .flat_map(|x| b.monomials().iter().map(move |y| x.mul(y)))
        .filter(|m| !(dual && m.has_complementary_pair()))
        .collect();
    all.iter().filter(|m| !all.iter().any(|o| o != *m && o.absorbs(m))).cloned().collect()
}

proptest! {
    #[test]
    fn products_match_naive_expansion(
        (a, b, dual) in any::<bool>().prop_flat_map(|d| (arb_poly(d), arb_poly(d), Just(d)))
    ) {
        let product: BTreeSet<Monomial> = a.mul(&b).monomials().iter().cloned().collect();
        prop_assert_eq!(product, naive_product(&a, &b, dual));
    }

    #[test]
    fn order_agrees_with_addition(a in arb_poly(false), b in arb_poly(false)) {
        prop_assert_eq!(a.leq(&b), a.add(&b) == b);
    }

    #[test]
    fn text_round_trips(a in arb_poly(true)) {
        prop_assert_eq!(SorpPoly::parse(&a.to_string(), true).unwrap(), a);
    }

    #[test]
    fn widening_is_below_monotone_and_idempotent(a in arb_poly(false), b in arb_poly(false), t in 1u32..5) {
        let w = a.widen(t);
        prop_assert!(w.leq(&a));
        prop_assert_eq!(w.widen(t), w.clone());
        if a.leq(&b) {
            prop_assert!(w.leq(&b.widen(t)));
        }
    }
}
