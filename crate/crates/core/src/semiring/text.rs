use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Carrier, Ext, TokenSets, Value};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::sorp::{Monomial, SorpPoly};

fn invalid(carrier: &Carrier, text: &str, reason: &str) -> Error {
    Error::InvalidValue { carrier: carrier.to_string(), text: text.into(), reason: reason.into() }
}

fn parse_rational(carrier: &Carrier, text: &str) -> Result<BigRational> {
    text.parse::<BigRational>().map_err(|_| invalid(carrier, text, "expected p/q"))
}

fn unit_interval(carrier: &Carrier, text: &str) -> Result<BigRational> {
    let r = parse_rational(carrier, text)?;
    if r < BigRational::zero() || r > BigRational::one() {
        return Err(invalid(carrier, text, "must lie in [0,1]"));
    }
    Ok(r)
}

fn parse_token_sets(text: &str) -> Result<Vec<BTreeSet<crate::Token>>> {
    if text == "0" {
        return Ok(Vec::new());
    }
    text.split('+')
        .map(|m| {
            let m = crate::sorp::parse_monomial_text(m)?;
            Ok(m.factors().iter().map(|(t, _)| t.clone()).collect())
        })
        .collect()
}

pub(super) fn parse_value(carrier: &Carrier, text: &str) -> Result<Value> {
    let t = text.trim();
    let v = match carrier {
        Carrier::Bool => match t {
            "0" | "false" => Value::Bool(false),
            "1" | "true" => Value::Bool(true),
            _ => return Err(invalid(carrier, t, "expected 0 or 1")),
        },
        Carrier::Nat => Value::Nat(t.parse().map_err(|_| invalid(carrier, t, "expected a natural"))?),
        Carrier::NatInf => Value::NatInf(if t == "inf" {
            Ext::Inf
        } else {
            Ext::Fin(t.parse().map_err(|_| invalid(carrier, t, "expected a natural or inf"))?)
        }),
        Carrier::Viterbi => Value::Viterbi(unit_interval(carrier, t)?),
        Carrier::Lukasiewicz => Value::Lukasiewicz(unit_interval(carrier, t)?),
        Carrier::Tropical => Value::Tropical(if t == "inf" {
            Ext::Inf
        } else {
            let r = parse_rational(carrier, t)?;
            if r < BigRational::zero() {
                return Err(invalid(carrier, t, "must be non-negative"));
            }
            Ext::Fin(r)
        }),
        Carrier::MinMax(scale) => match scale.level(t) {
            Some(i) => Value::MinMax(scale.clone(), i),
            None => return Err(invalid(carrier, t, "unknown level")),
        },
        Carrier::PosBool => Value::PosBool(TokenSets::minimized(parse_token_sets(t)?)),
        Carrier::Why => Value::Why(TokenSets::raw(parse_token_sets(t)?)),
        Carrier::NatPoly => Value::NatPoly(parse_natpoly(carrier, t)?),
        Carrier::Sorp => Value::Sorp(SorpPoly::parse(t, false)?),
        Carrier::SorpDual => Value::SorpDual(SorpPoly::parse(t, true)?),
    };
    Ok(v)
}

fn parse_natpoly(carrier: &Carrier, text: &str) -> Result<BTreeMap<Monomial, BigUint>> {
    let mut out: BTreeMap<Monomial, BigUint> = BTreeMap::new();
    if text == "0" {
        return Ok(out);
    }
    for term in text.split('+') {
        let term = term.trim();
        let (coeff, rest) = match term.split_once('*') {
            Some((c, rest)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) => {
                (c.trim().parse::<BigUint>().unwrap(), rest)
            }
            _ if term.chars().all(|ch| ch.is_ascii_digit()) => {
                (term.parse::<BigUint>().map_err(|_| invalid(carrier, term, "bad coefficient"))?, "1")
            }
            _ => (BigUint::one(), term),
        };
        let m = crate::sorp::parse_monomial_text(rest)?;
        if m.factors().iter().any(|(_, e)| *e == ExtNat::Inf) {
            return Err(invalid(carrier, term, "exponents must be finite"));
        }
        *out.entry(m).or_insert_with(BigUint::zero) += coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub(super) fn fmt_value(value: &Value, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match value {
        Value::Bool(b) => f.write_str(if *b { "1" } else { "0" }),
        Value::Nat(n) => write!(f, "{n}"),
        Value::NatInf(Ext::Fin(n)) => write!(f, "{n}"),
        Value::NatInf(Ext::Inf) | Value::Tropical(Ext::Inf) => f.write_str("inf"),
        Value::Viterbi(r) | Value::Lukasiewicz(r) | Value::Tropical(Ext::Fin(r)) => write!(f, "{r}"),
        Value::MinMax(scale, i) => f.write_str(&scale.levels()[*i]),
        Value::PosBool(s) | Value::Why(s) => write!(f, "{s}"),
        Value::NatPoly(p) => {
            if p.is_empty() {
                return f.write_str("0");
            }
            for (i, (m, c)) in p.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                match (m.is_one(), c.is_one()) {
                    (true, _) => write!(f, "{c}")?,
                    (false, true) => write!(f, "{m}")?,
                    (false, false) => write!(f, "{c}*{m}")?,
                }
            }
            Ok(())
        }
        Value::Sorp(p) | Value::SorpDual(p) => write!(f, "{p}"),
    }
}
