//! Generalized absorptive polynomials `S∞[X]` and the dual-indeterminate
//! quotient `S∞[X,X̄]`.
//!
//! A polynomial is a finite antichain of monomials under absorption: `m₂`
//! absorbs `m₁` when every exponent of `m₂` is at most the matching exponent
//! of `m₁`. Sums and products keep only the absorption-maximal monomials.

mod monomial;
mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use monomial::Monomial;
pub(crate) use text::parse_monomial as parse_monomial_text;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::semiring::{Carrier, Value};
use crate::token::Token;

/// An antichain of monomials in canonical order.
///
/// With `dual` set, the polynomial lives in the quotient by `x·~x = 0`: no
/// monomial contains a complementary pair of tokens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SorpPoly {
    monomials: Vec<Monomial>,
    dual: bool,
}

impl SorpPoly {
    pub fn zero(dual: bool) -> SorpPoly {
        SorpPoly { monomials: Vec::new(), dual }
    }

    pub fn one(dual: bool) -> SorpPoly {
        SorpPoly { monomials: vec![Monomial::one()], dual }
    }

    pub fn token(token: Token, dual: bool) -> SorpPoly {
        SorpPoly { monomials: vec![Monomial::var(token)], dual }
    }

    pub fn from_monomial(m: Monomial, dual: bool) -> SorpPoly {
        SorpPoly::maximals(std::iter::once(m), dual)
    }

    /// The `⪰`-maximal monomials of `ms`. Under `dual`, monomials with a
    /// complementary pair are dropped first (they are zero in the quotient).
    pub fn maximals<I: IntoIterator<Item = Monomial>>(ms: I, dual: bool) -> SorpPoly {
        let mut all: Vec<Monomial> = ms.into_iter().filter(|m| !(dual && m.has_complementary_pair())).collect();
        all.sort();
        all.dedup();
        // If `a` absorbs a different `b`, then `a` has at most the tokens of
        // `b`, at most its `∞` exponents, and when both agree, a smaller
        // finite degree. So only monomials with a smaller key can absorb.
        all.sort_by_cached_key(Monomial::absorption_key);
        let mut kept: Vec<Monomial> = Vec::new();
        for m in all {
            if !kept.iter().any(|k| k.absorbs(&m)) {
                kept.push(m);
            }
        }
        kept.sort();
        let p = SorpPoly { monomials: kept, dual };
        debug_assert!(p.is_antichain());
        p
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials[0].is_one()
    }

    /// Checks the representation invariants: no monomial absorbs another,
    /// canonical order, and no complementary pairs under duality.
    pub fn is_antichain(&self) -> bool {
        let ms = &self.monomials;
        let ordered = ms.windows(2).all(|w| w[0] < w[1]);
        let incomparable =
            ms.iter().enumerate().all(|(i, a)| ms.iter().enumerate().all(|(j, b)| i == j || !a.absorbs(b)));
        let consistent = !self.dual || ms.iter().all(|m| !m.has_complementary_pair());
        ordered && incomparable && consistent
    }

    pub fn add(&self, other: &SorpPoly) -> SorpPoly {
        debug_assert_eq!(self.dual, other.dual);
        SorpPoly::maximals(self.monomials.iter().chain(&other.monomials).cloned(), self.dual)
    }

    pub fn mul(&self, other: &SorpPoly) -> SorpPoly {
        debug_assert_eq!(self.dual, other.dual);
        let dual = self.dual;
        let products =
            self.monomials.iter().flat_map(|a| other.monomials.iter().filter_map(move |b| a.mul_checked(b, dual)));
        SorpPoly::maximals(products, dual)
    }

    pub fn pow(&self, n: ExtNat) -> SorpPoly {
        match n {
            ExtNat::Inf => self.infinitary_power(),
            ExtNat::Fin(mut k) => {
                let mut base = self.clone();
                let mut acc = SorpPoly::one(self.dual);
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.mul(&base);
                    }
                    k >>= 1;
                    if k > 0 {
                        base = base.mul(&base);
                    }
                }
                acc
            }
        }
    }

    /// Natural order: every monomial of `self` is absorbed by one of `other`.
    pub fn leq(&self, other: &SorpPoly) -> bool {
        self.monomials.iter().all(|m| other.monomials.iter().any(|big| big.absorbs(m)))
    }

    /// Least upper bound of a finite family.
    pub fn sup<'a, I: IntoIterator<Item = &'a SorpPoly>>(polys: I, dual: bool) -> SorpPoly {
        SorpPoly::maximals(polys.into_iter().flat_map(|p| p.monomials.iter().cloned()), dual)
    }

    /// Greatest lower bound: pointwise-max joins of all monomial pairs.
    pub fn meet(&self, other: &SorpPoly) -> SorpPoly {
        debug_assert_eq!(self.dual, other.dual);
        let joins = self.monomials.iter().flat_map(|a| other.monomials.iter().map(move |b| a.join(b)));
        SorpPoly::maximals(joins, self.dual)
    }

    /// `P^∞ = ⊓ₙ Pⁿ`: every positive exponent becomes `∞`.
    pub fn infinitary_power(&self) -> SorpPoly {
        SorpPoly::maximals(self.monomials.iter().map(Monomial::infinitary), self.dual)
    }

    /// Replaces every finite exponent `≥ threshold` by `∞`.
    ///
    /// The result is below `self`, monotone in `self`, idempotent, and the
    /// image of `widen(·, threshold)` over a fixed token set is finite.
    pub fn widen(&self, threshold: u32) -> SorpPoly {
        assert!(threshold >= 1, "widening threshold must be positive");
        SorpPoly::maximals(self.monomials.iter().map(|m| m.widen(threshold)), self.dual)
    }

    /// All tokens occurring in the polynomial.
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.monomials.iter().flat_map(|m| m.factors().iter().map(|(t, _)| t))
    }

    pub fn parse(text: &str, dual: bool) -> Result<SorpPoly> {
        text::parse_poly(text, dual)
    }
}

impl fmt::Display for SorpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SorpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SorpPoly({self})")
    }
}

/// Evaluates `poly` under the unique fully continuous homomorphism extending
/// `assignment` into an absorptive, fully continuous `target`.
///
/// For dual polynomials every assigned complementary pair must multiply to
/// zero in the target.
pub fn eval_hom(poly: &SorpPoly, assignment: &BTreeMap<Token, Value>, target: &Carrier) -> Result<Value> {
    let caps = target.caps();
    if !(caps.absorptive && caps.fully_continuous) {
        return Err(Error::NotAbsorptive(target.to_string()));
    }
    for value in assignment.values() {
        target.check(value)?;
    }
    if poly.dual {
        for (token, value) in assignment {
            if token.is_negated() {
                continue;
            }
            if let Some(dual_value) = assignment.get(&token.dual()) {
                if !value.mul(dual_value)?.is_zero() {
                    return Err(Error::DualityViolated { token: token.name().to_string() });
                }
            }
        }
    }
    let mut total = target.zero();
    for m in &poly.monomials {
        let mut counts = Vec::with_capacity(m.factors().len());
        for (token, exp) in m.factors() {
            let v = assignment.get(token).ok_or_else(|| Error::UnassignedToken(token.to_string()))?;
            counts.push((v.clone(), *exp));
        }
        total = total.add(&target.counted_product(&counts)?)?;
    }
    Ok(total)
}

/// Drops all exponents, landing in `PosBool(X, X̄)`.
pub fn drop_exponents(poly: &SorpPoly) -> Value {
    let clauses = poly.monomials.iter().map(|m| m.factors().iter().map(|(t, _)| t.clone()).collect());
    Value::PosBool(crate::semiring::TokenSets::minimized(clauses))
}

#[cfg(test)]
mod tests;
