use super::{Monomial, SorpPoly};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::token::Token;

fn invalid(text: &str, reason: &str) -> Error {
    Error::InvalidValue { carrier: "sorp".into(), text: text.into(), reason: reason.into() }
}

/// Parses a factor list such as `x^2*~y^inf`; `1` is the empty monomial.
pub(crate) fn parse_monomial(text: &str) -> Result<Monomial> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let mut factors = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((name, exp)) => (name.trim(), parse_exponent(exp.trim(), text)?),
            None => (factor, ExtNat::ONE),
        };
        if name == "1" {
            continue;
        }
        let token = Token::parse(name).map_err(|_| invalid(text, "bad token"))?;
        factors.push((token, exp));
    }
    Ok(Monomial::from_factors(factors))
}

fn parse_exponent(text: &str, whole: &str) -> Result<ExtNat> {
    if text == "inf" {
        return Ok(ExtNat::Inf);
    }
    text.parse::<u32>().map(ExtNat::Fin).map_err(|_| invalid(whole, "bad exponent"))
}

pub(crate) fn parse_poly(text: &str, dual: bool) -> Result<SorpPoly> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(invalid(text, "empty polynomial"));
    }
    if trimmed == "0" {
        return Ok(SorpPoly::zero(dual));
    }
    let monomials = trimmed.split('+').map(parse_monomial).collect::<Result<Vec<_>>>()?;
    Ok(SorpPoly::maximals(monomials, dual))
}
