//! Commutative, naturally ordered semirings used as provenance carriers.
//!
//! A [`Carrier`] names a semiring together with its capability flags; a
//! [`Value`] is an element of one carrier. All numeric carriers use exact
//! arithmetic (big naturals and big rationals).

mod sets;
mod text;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use sets::TokenSets;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::sorp::{Monomial, SorpPoly};
use crate::token::Token;

/// Algebraic properties of a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SemiringCaps {
    /// `a + b = 0` implies `a = b = 0`, and `ab = 0` implies `a = 0` or `b = 0`.
    pub positive: bool,
    pub idempotent: bool,
    /// `a + ab = a`; equivalently `1` is the greatest element.
    pub absorptive: bool,
    /// Chains have suprema and infima, preserved by `+` and `·`.
    pub fully_continuous: bool,
    /// Infima of chains of non-zero elements are non-zero.
    pub chain_positive: bool,
    pub finite_carrier: bool,
}

impl SemiringCaps {
    /// Absorptive semirings are idempotent; chain-positivity presupposes
    /// full continuity.
    pub fn is_consistent(&self) -> bool {
        (!self.absorptive || self.idempotent) && (!self.chain_positive || self.fully_continuous)
    }
}

/// The finite total order `levels[0] < levels[1] < …` of a min-max semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinMaxScale(Arc<[String]>);

impl MinMaxScale {
    pub fn new<I: IntoIterator<Item = String>>(levels: I) -> Result<MinMaxScale> {
        let levels: Vec<String> = levels.into_iter().collect();
        let mut seen = std::collections::BTreeSet::new();
        if levels.len() < 2 || !levels.iter().all(|l| !l.is_empty() && seen.insert(l.clone())) {
            return Err(Error::UnknownCarrier(format!("minmax:{}", levels.join("<"))));
        }
        Ok(MinMaxScale(levels.into()))
    }

    pub fn levels(&self) -> &[String] {
        &self.0
    }

    pub fn level(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|l| l == name)
    }
}

/// A natural number or rational extended by `∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext<T> {
    Fin(T),
    Inf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// `({0,1}, ∨, ∧)`.
    Bool,
    /// `(ℕ, +, ·)`.
    Nat,
    /// `(ℕ ∪ {∞}, +, ·)`.
    NatInf,
    /// `([0,1], max, ·)`.
    Viterbi,
    /// `(ℚ≥0 ∪ {∞}, min, +)`.
    Tropical,
    /// `([0,1], max, ⋄)` with `a ⋄ b = max(0, a + b − 1)`.
    Lukasiewicz,
    /// `(levels, max, min)` over an explicit finite total order.
    MinMax(MinMaxScale),
    /// Positive Boolean expressions (minimal monotone DNF); `x ∧ ~x = false`.
    PosBool,
    /// The Why-semiring `W[X]`: sets of token sets.
    Why,
    /// Provenance polynomials `ℕ[X]`.
    NatPoly,
    /// Generalized absorptive polynomials `S∞[X]`.
    Sorp,
    /// Dual-indeterminate absorptive polynomials `S∞[X, X̄]`.
    SorpDual,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Nat(BigUint),
    NatInf(Ext<BigUint>),
    Viterbi(BigRational),
    /// Tropical costs; `Inf` is the semiring zero.
    Tropical(Ext<BigRational>),
    Lukasiewicz(BigRational),
    MinMax(MinMaxScale, usize),
    PosBool(TokenSets),
    Why(TokenSets),
    NatPoly(BTreeMap<Monomial, BigUint>),
    Sorp(SorpPoly),
    SorpDual(SorpPoly),
}

impl Carrier {
    /// Parses a carrier name: `bool`, `nat`, `natinf`, `viterbi`, `trop`,
    /// `lukasiewicz`, `minmax:<v1<v2<...>`, `posbool`, `why`, `natpoly`,
    /// `sorp`, `sorpdual`.
    pub fn parse(name: &str) -> Result<Carrier> {
        let c = match name.trim() {
            "bool" => Carrier::Bool,
            "nat" => Carrier::Nat,
            "natinf" => Carrier::NatInf,
            "viterbi" => Carrier::Viterbi,
            "trop" => Carrier::Tropical,
            "lukasiewicz" => Carrier::Lukasiewicz,
            "posbool" => Carrier::PosBool,
            "why" => Carrier::Why,
            "natpoly" => Carrier::NatPoly,
            "sorp" => Carrier::Sorp,
            "sorpdual" => Carrier::SorpDual,
            other => match other.strip_prefix("minmax:") {
                Some(levels) => Carrier::MinMax(MinMaxScale::new(levels.split('<').map(|l| l.trim().to_string()))?),
                None => return Err(Error::UnknownCarrier(other.to_string())),
            },
        };
        Ok(c)
    }

    pub fn caps(&self) -> SemiringCaps {
        let all = SemiringCaps {
            positive: true,
            idempotent: true,
            absorptive: true,
            fully_continuous: true,
            chain_positive: true,
            finite_carrier: false,
        };
        match self {
            Carrier::Bool | Carrier::MinMax(_) | Carrier::PosBool => SemiringCaps { finite_carrier: true, ..all },
            Carrier::Nat | Carrier::NatPoly => SemiringCaps { positive: true, ..Default::default() },
            Carrier::NatInf => {
                SemiringCaps { positive: true, fully_continuous: true, chain_positive: true, ..Default::default() }
            }
            Carrier::Viterbi | Carrier::Tropical => SemiringCaps { chain_positive: false, ..all },
            Carrier::Lukasiewicz => SemiringCaps { positive: false, chain_positive: false, ..all },
            // Finite over any finite token set.
            Carrier::Why => SemiringCaps { absorptive: false, finite_carrier: true, ..all },
            Carrier::Sorp => all,
            Carrier::SorpDual => SemiringCaps { positive: false, ..all },
        }
    }

    pub fn is_absorptive_continuous(&self) -> bool {
        let caps = self.caps();
        caps.absorptive && caps.fully_continuous
    }

    pub fn zero(&self) -> Value {
        match self {
            Carrier::Bool => Value::Bool(false),
            Carrier::Nat => Value::Nat(BigUint::zero()),
            Carrier::NatInf => Value::NatInf(Ext::Fin(BigUint::zero())),
            Carrier::Viterbi => Value::Viterbi(BigRational::zero()),
            Carrier::Tropical => Value::Tropical(Ext::Inf),
            Carrier::Lukasiewicz => Value::Lukasiewicz(BigRational::zero()),
            Carrier::MinMax(s) => Value::MinMax(s.clone(), 0),
            Carrier::PosBool => Value::PosBool(TokenSets::empty()),
            Carrier::Why => Value::Why(TokenSets::empty()),
            Carrier::NatPoly => Value::NatPoly(BTreeMap::new()),
            Carrier::Sorp => Value::Sorp(SorpPoly::zero(false)),
            Carrier::SorpDual => Value::SorpDual(SorpPoly::zero(true)),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Carrier::Bool => Value::Bool(true),
            Carrier::Nat => Value::Nat(BigUint::one()),
            Carrier::NatInf => Value::NatInf(Ext::Fin(BigUint::one())),
            Carrier::Viterbi => Value::Viterbi(BigRational::one()),
            Carrier::Tropical => Value::Tropical(Ext::Fin(BigRational::zero())),
            Carrier::Lukasiewicz => Value::Lukasiewicz(BigRational::one()),
            Carrier::MinMax(s) => Value::MinMax(s.clone(), s.levels().len() - 1),
            Carrier::PosBool => Value::PosBool(TokenSets::unit()),
            Carrier::Why => Value::Why(TokenSets::unit()),
            Carrier::NatPoly => Value::NatPoly(BTreeMap::from([(Monomial::one(), BigUint::one())])),
            Carrier::Sorp => Value::Sorp(SorpPoly::one(false)),
            Carrier::SorpDual => Value::SorpDual(SorpPoly::one(true)),
        }
    }

    /// The greatest element, where it has a closed form independent of any
    /// token set. `W[X]` needs its token set; see [`TokenSets::why_top`].
    pub fn top(&self) -> Option<Value> {
        match self {
            Carrier::NatInf => Some(Value::NatInf(Ext::Inf)),
            Carrier::Nat | Carrier::NatPoly | Carrier::Why => None,
            c if c.caps().absorptive => Some(c.one()),
            _ => None,
        }
    }

    pub fn from_bool(&self, b: bool) -> Value {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    /// Errors unless `value` belongs to this carrier.
    pub fn check(&self, value: &Value) -> Result<()> {
        let actual = value.carrier();
        if &actual == self {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left: self.to_string(), right: actual.to_string() })
        }
    }

    pub fn parse_value(&self, text: &str) -> Result<Value> {
        text::parse_value(self, text)
    }

    /// `∏ a^{c(a)}` over a finite count map, with `a^∞` the infinitary power.
    pub fn counted_product(&self, counts: &[(Value, ExtNat)]) -> Result<Value> {
        if !self.is_absorptive_continuous() {
            return Err(Error::NotAbsorptive(self.to_string()));
        }
        let mut acc = self.one();
        for (a, c) in counts {
            self.check(a)?;
            if c.is_zero() {
                continue;
            }
            acc = acc.mul(&a.pow(*c)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Carrier::Bool => "bool",
            Carrier::Nat => "nat",
            Carrier::NatInf => "natinf",
            Carrier::Viterbi => "viterbi",
            Carrier::Tropical => "trop",
            Carrier::Lukasiewicz => "lukasiewicz",
            Carrier::MinMax(s) => return write!(f, "minmax:{}", s.levels().join("<")),
            Carrier::PosBool => "posbool",
            Carrier::Why => "why",
            Carrier::NatPoly => "natpoly",
            Carrier::Sorp => "sorp",
            Carrier::SorpDual => "sorpdual",
        };
        f.write_str(name)
    }
}

fn rat_one() -> BigRational {
    BigRational::one()
}

impl Value {
    pub fn carrier(&self) -> Carrier {
        match self {
            Value::Bool(_) => Carrier::Bool,
            Value::Nat(_) => Carrier::Nat,
            Value::NatInf(_) => Carrier::NatInf,
            Value::Viterbi(_) => Carrier::Viterbi,
            Value::Tropical(_) => Carrier::Tropical,
            Value::Lukasiewicz(_) => Carrier::Lukasiewicz,
            Value::MinMax(s, _) => Carrier::MinMax(s.clone()),
            Value::PosBool(_) => Carrier::PosBool,
            Value::Why(_) => Carrier::Why,
            Value::NatPoly(_) => Carrier::NatPoly,
            Value::Sorp(_) => Carrier::Sorp,
            Value::SorpDual(_) => Carrier::SorpDual,
        }
    }

    fn mismatch(&self, other: &Value) -> Error {
        Error::CarrierMismatch { left: self.carrier().to_string(), right: other.carrier().to_string() }
    }

    pub fn is_zero(&self) -> bool {
        *self == self.carrier().zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.carrier().one()
    }

    pub fn add(&self, other: &Value) -> Result<Value> {
        use Value::*;
        let v = match (self, other) {
            (Bool(a), Bool(b)) => Bool(*a || *b),
            (Nat(a), Nat(b)) => Nat(a + b),
            (NatInf(a), NatInf(b)) => NatInf(match (a, b) {
                (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
                _ => Ext::Inf,
            }),
            (Viterbi(a), Viterbi(b)) => Viterbi(a.max(b).clone()),
            (Tropical(a), Tropical(b)) => Tropical(a.min(b).clone()),
            (Lukasiewicz(a), Lukasiewicz(b)) => Lukasiewicz(a.max(b).clone()),
            (MinMax(s, a), MinMax(t, b)) if s == t => MinMax(s.clone(), *a.max(b)),
            (PosBool(a), PosBool(b)) => PosBool(a.posbool_add(b)),
            (Why(a), Why(b)) => Why(a.why_add(b)),
            (NatPoly(a), NatPoly(b)) => {
                let mut out = a.clone();
                for (m, c) in b {
                    *out.entry(m.clone()).or_insert_with(BigUint::zero) += c;
                }
                NatPoly(out)
            }
            (Sorp(a), Sorp(b)) => Sorp(a.add(b)),
            (SorpDual(a), SorpDual(b)) => SorpDual(a.add(b)),
            _ => return Err(self.mismatch(other)),
        };
        Ok(v)
    }

    pub fn mul(&self, other: &Value) -> Result<Value> {
        use Value::*;
        let v = match (self, other) {
            (Bool(a), Bool(b)) => Bool(*a && *b),
            (Nat(a), Nat(b)) => Nat(a * b),
            (NatInf(a), NatInf(b)) => NatInf(match (a, b) {
                (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
                (Ext::Fin(z), _) | (_, Ext::Fin(z)) if z.is_zero() => Ext::Fin(BigUint::zero()),
                _ => Ext::Inf,
            }),
            (Viterbi(a), Viterbi(b)) => Viterbi(a * b),
            (Tropical(a), Tropical(b)) => Tropical(match (a, b) {
                (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
                _ => Ext::Inf,
            }),
            (Lukasiewicz(a), Lukasiewicz(b)) => {
                let s = a + b - rat_one();
                Lukasiewicz(if s.is_negative_or_zero() { BigRational::zero() } else { s })
            }
            (MinMax(s, a), MinMax(t, b)) if s == t => MinMax(s.clone(), *a.min(b)),
            (PosBool(a), PosBool(b)) => PosBool(a.posbool_mul(b)),
            (Why(a), Why(b)) => Why(a.why_mul(b)),
            (NatPoly(a), NatPoly(b)) => {
                let mut out: BTreeMap<Monomial, BigUint> = BTreeMap::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        *out.entry(ma.mul(mb)).or_insert_with(BigUint::zero) += ca * cb;
                    }
                }
                NatPoly(out)
            }
            (Sorp(a), Sorp(b)) => Sorp(a.mul(b)),
            (SorpDual(a), SorpDual(b)) => SorpDual(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        };
        Ok(v)
    }

    /// Decides the natural order `a ≤ b ⟺ ∃c. a + c = b` by a closed form
    /// per carrier.
    pub fn natural_leq(&self, other: &Value) -> Result<bool> {
        use Value::*;
        let b = match (self, other) {
            (Bool(a), Bool(b)) => a <= b,
            (Nat(a), Nat(b)) => a <= b,
            (NatInf(a), NatInf(b)) => a <= b,
            (Viterbi(a), Viterbi(b)) | (Lukasiewicz(a), Lukasiewicz(b)) => a <= b,
            // min is addition, so the natural order reverses the numeric one.
            (Tropical(a), Tropical(b)) => b <= a,
            (MinMax(s, a), MinMax(t, b)) if s == t => a <= b,
            (PosBool(a), PosBool(b)) => &a.posbool_add(b) == b,
            (Why(a), Why(b)) => a.is_subset(b),
            (NatPoly(a), NatPoly(b)) => a.iter().all(|(m, c)| b.get(m).is_some_and(|d| c <= d)),
            (Sorp(a), Sorp(b)) | (SorpDual(a), SorpDual(b)) => a.leq(b),
            _ => return Err(self.mismatch(other)),
        };
        Ok(b)
    }

    /// `a^∞ = ⊓ₙ aⁿ` in absorptive, fully continuous carriers.
    pub fn infinitary_power(&self) -> Result<Value> {
        use Value::*;
        let carrier = self.carrier();
        if !carrier.is_absorptive_continuous() {
            return Err(Error::NotAbsorptive(carrier.to_string()));
        }
        let v = match self {
            Viterbi(a) => Viterbi(if a.is_one() { rat_one() } else { BigRational::zero() }),
            Lukasiewicz(a) => Lukasiewicz(if a.is_one() { rat_one() } else { BigRational::zero() }),
            Tropical(a) => Tropical(match a {
                Ext::Fin(x) if x.is_zero() => Ext::Fin(BigRational::zero()),
                _ => Ext::Inf,
            }),
            Sorp(p) => Sorp(p.infinitary_power()),
            SorpDual(p) => SorpDual(p.infinitary_power()),
            // Multiplication is idempotent in the remaining absorptive carriers.
            Bool(_) | MinMax(..) | PosBool(_) => self.clone(),
            Nat(_) | NatInf(_) | Why(_) | NatPoly(_) => unreachable!("rejected by caps"),
        };
        Ok(v)
    }

    /// `aⁿ` for finite `n`, or the infinitary power for `n = ∞`.
    pub fn pow(&self, n: ExtNat) -> Result<Value> {
        match n {
            ExtNat::Inf => self.infinitary_power(),
            ExtNat::Fin(k) => {
                if let Value::Sorp(p) | Value::SorpDual(p) = self {
                    let r = p.pow(n);
                    return Ok(if p.is_dual() { Value::SorpDual(r) } else { Value::Sorp(r) });
                }
                let mut acc = self.carrier().one();
                let mut base = self.clone();
                let mut k = k;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.mul(&base)?;
                    }
                    k >>= 1;
                    if k > 0 {
                        base = base.mul(&base)?;
                    }
                }
                Ok(acc)
            }
        }
    }

    pub fn as_sorp(&self) -> Option<&SorpPoly> {
        match self {
            Value::Sorp(p) | Value::SorpDual(p) => Some(p),
            _ => None,
        }
    }

    /// Tokens mentioned by a symbolic value; empty for numeric carriers.
    pub fn tokens(&self) -> std::collections::BTreeSet<Token> {
        match self {
            Value::PosBool(s) | Value::Why(s) => s.tokens().cloned().collect(),
            Value::NatPoly(m) => m.keys().flat_map(|mono| mono.factors().iter().map(|(t, _)| t.clone())).collect(),
            Value::Sorp(p) | Value::SorpDual(p) => p.tokens().cloned().collect(),
            _ => Default::default(),
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

trait NonPositive {
    fn is_negative_or_zero(&self) -> bool;
}

impl NonPositive for BigRational {
    fn is_negative_or_zero(&self) -> bool {
        *self <= BigRational::zero()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::fmt_value(self, f)
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.carrier(), self)
    }
}
