use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn c(name: &str) -> Carrier {
    Carrier::parse(name).unwrap()
}

fn v(carrier: &str, text: &str) -> Value {
    c(carrier).parse_value(text).unwrap()
}

#[test]
fn addition_examples() {
    assert_eq!(v("viterbi", "1/2").add(&v("viterbi", "3/4")).unwrap(), v("viterbi", "3/4"));
    assert_eq!(v("trop", "3").add(&v("trop", "5")).unwrap(), v("trop", "3"));
    assert_eq!(v("nat", "2").add(&v("nat", "3")).unwrap(), v("nat", "5"));
    assert!(matches!(v("nat", "2").add(&v("bool", "1")), Err(Error::CarrierMismatch { .. })));
}

#[test]
fn multiplication_examples() {
    assert_eq!(v("lukasiewicz", "3/4").mul(&v("lukasiewicz", "1/2")).unwrap(), v("lukasiewicz", "1/4"));
    assert_eq!(v("trop", "3").mul(&v("trop", "5")).unwrap(), v("trop", "8"));
    assert_eq!(v("posbool", "x").mul(&v("posbool", "x + y")).unwrap(), v("posbool", "x"));
    assert!(v("posbool", "x").mul(&v("posbool", "~x")).unwrap().is_zero());
}

#[test]
fn natural_order_examples() {
    assert!(v("trop", "5").natural_leq(&v("trop", "3")).unwrap());
    assert!(!v("trop", "3").natural_leq(&v("trop", "5")).unwrap());
    assert!(v("posbool", "x").natural_leq(&v("posbool", "x + y")).unwrap());
    assert!(!v("natinf", "inf").natural_leq(&v("natinf", "5")).unwrap());
    assert!(v("why", "x").natural_leq(&v("why", "x + x*y")).unwrap());
}

/// `a ≤ b` iff `min(a, c) = b` for some `c`, searched over a grid that
/// contains both arguments.
#[test]
fn tropical_order_matches_witness_search() {
    let grid: Vec<Value> = (0..=12).map(|k| v("trop", &format!("{k}/2"))).chain([v("trop", "inf")]).collect();
    for a in &grid {
        for b in &grid {
            let witnessed = grid.iter().any(|w| a.add(w).unwrap() == *b);
            assert_eq!(a.natural_leq(b).unwrap(), witnessed, "{a:?} <= {b:?}");
        }
    }
}

#[test]
fn infinitary_power_examples() {
    for eps in ["1/1000", "1/2", "1"] {
        let a = Value::Viterbi(BigRational::one() - eps.parse::<BigRational>().unwrap());
        assert!(a.infinitary_power().unwrap().is_zero(), "{eps}");
    }
    assert!(v("viterbi", "1").infinitary_power().unwrap().is_one());
    assert_eq!(v("minmax:lo<mid<hi", "mid").infinitary_power().unwrap(), v("minmax:lo<mid<hi", "mid"));
    assert_eq!(v("trop", "0").infinitary_power().unwrap(), v("trop", "0"));
    assert_eq!(v("trop", "1/3").infinitary_power().unwrap(), v("trop", "inf"));
    assert_eq!(v("posbool", "x*y + z").infinitary_power().unwrap(), v("posbool", "x*y + z"));
    assert!(matches!(v("nat", "2").infinitary_power(), Err(Error::NotAbsorptive(_))));
}

#[test]
fn counted_product_examples() {
    assert!(c("viterbi").counted_product(&[]).unwrap().is_one());
    assert!(c("viterbi").counted_product(&[(v("viterbi", "1/2"), ExtNat::Inf)]).unwrap().is_zero());
    let pb = c("posbool");
    let counts = [(v("posbool", "x"), ExtNat::Fin(3)), (v("posbool", "y"), ExtNat::Inf)];
    // Finite subproducts x^i·y^j with i ≤ 3, j ≤ 8 form a descending chain
    // whose last element is the infimum.
    let mut chain = Vec::new();
    let mut acc = pb.one();
    for (factor, times) in [(v("posbool", "x"), 3), (v("posbool", "y"), 8)] {
        for _ in 0..times {
            acc = acc.mul(&factor).unwrap();
            chain.push(acc.clone());
        }
    }
    assert!(chain.windows(2).all(|w| w[1].natural_leq(&w[0]).unwrap()));
    assert_eq!(pb.counted_product(&counts).unwrap(), *chain.last().unwrap());
    assert_eq!(pb.counted_product(&counts).unwrap(), v("posbool", "x*y"));
    assert!(matches!(c("nat").counted_product(&[]), Err(Error::NotAbsorptive(_))));
}

#[test]
fn capability_flags() {
    for name in [
        "bool",
        "nat",
        "natinf",
        "viterbi",
        "trop",
        "lukasiewicz",
        "minmax:a<b",
        "posbool",
        "why",
        "natpoly",
        "sorp",
        "sorpdual",
    ] {
        let caps = c(name).caps();
        assert!(caps.is_consistent(), "{name}");
        assert_ne!(c(name).zero(), c(name).one(), "{name}");
    }
    let luk = c("lukasiewicz").caps();
    assert!(luk.absorptive && luk.fully_continuous && !luk.positive);
    assert!(!c("nat").caps().absorptive);
    assert!(!c("natpoly").caps().absorptive);
    assert!(c("natinf").caps().fully_continuous && !c("natinf").caps().absorptive);
    assert!(c("sorpdual").caps().chain_positive);
}

#[test]
fn value_text_round_trips() {
    for (carrier, text) in [
        ("viterbi", "999/1000"),
        ("trop", "inf"),
        ("natinf", "inf"),
        ("minmax:lo<mid<hi", "hi"),
        ("posbool", "x*y + z"),
        ("why", "x + x*y"),
        ("sorp", "x*y^inf + z^inf"),
        ("sorpdual", "~x1*~y1^2"),
    ] {
        let value = v(carrier, text);
        assert_eq!(value.to_string(), text);
        assert_eq!(v(carrier, &value.to_string()), value);
    }
    assert!(c("viterbi").parse_value("3/2").is_err());
    assert!(c("trop").parse_value("-1").is_err());
    assert!(Carrier::parse("minmax:a<a").is_err());
    assert!(Carrier::parse("reals").is_err());
}

fn text_of(sets: &[Vec<u8>]) -> String {
    if sets.is_empty() {
        return "0".into();
    }
    sets.iter()
        .map(|s| {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.iter().map(|t| format!("t{t}")).collect::<Vec<_>>().join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Naive DNF product followed by removal of non-minimal clauses.
fn dnf_mul(a: &[Vec<u8>], b: &[Vec<u8>]) -> BTreeSet<BTreeSet<u8>> {
    let all: BTreeSet<BTreeSet<u8>> =
        a.iter().flat_map(|x| b.iter().map(move |y| x.iter().chain(y).copied().collect())).collect();
    all.iter().filter(|s| !all.iter().any(|t| t != *s && t.is_subset(s))).cloned().collect()
}

fn clauses(value: &Value) -> BTreeSet<BTreeSet<u8>> {
    let Value::PosBool(sets) = value else { panic!("posbool expected") };
    sets.sets().iter().map(|s| s.iter().map(|t| t.name()[1..].parse().unwrap()).collect()).collect()
}

proptest! {
    #[test]
    fn posbool_product_matches_dnf_oracle(
        a in prop::collection::vec(prop::collection::vec(0u8..4, 0..3), 0..4),
        b in prop::collection::vec(prop::collection::vec(0u8..4, 0..3), 0..4),
    ) {
        let pa = v("posbool", &text_of(&a));
        let pb = v("posbool", &text_of(&b));
        prop_assert_eq!(clauses(&pa.mul(&pb).unwrap()), dnf_mul(&a, &b));
    }

    #[test]
    fn viterbi_order_is_numeric(p in 0u32..20, q in 1u32..20, r in 0u32..20, s in 1u32..20) {
        prop_assume!(p <= q && r <= s);
        let a = v("viterbi", &format!("{p}/{q}"));
        let b = v("viterbi", &format!("{r}/{s}"));
        prop_assert_eq!(a.natural_leq(&b).unwrap(), (p as u64) * (s as u64) <= (r as u64) * (q as u64));
        prop_assert_eq!(a.add(&b).unwrap() == b, a.natural_leq(&b).unwrap());
    }
}
