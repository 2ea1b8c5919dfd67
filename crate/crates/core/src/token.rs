use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A provenance token. Negated tokens (`~x`) are the dual indeterminates of
/// their positive counterparts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    name: Arc<str>,
    negated: bool,
}

impl Token {
    pub fn new(name: &str) -> Token {
        Token { name: Arc::from(name), negated: false }
    }

    pub fn negative(name: &str) -> Token {
        Token { name: Arc::from(name), negated: true }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// The dual token: `x ↦ ~x`, `~x ↦ x`.
    pub fn dual(&self) -> Token {
        Token { name: self.name.clone(), negated: !self.negated }
    }

    pub fn is_dual_of(&self, other: &Token) -> bool {
        self.name == other.name && self.negated != other.negated
    }

    /// Parses `name` or `~name`.
    pub fn parse(text: &str) -> Result<Token> {
        let (negated, name) = match text.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        if !is_identifier(name) {
            return Err(Error::InvalidValue {
                carrier: "token".into(),
                text: text.into(),
                reason: "expected an identifier, optionally prefixed by ~".into(),
            });
        }
        Ok(Token { name: Arc::from(name), negated })
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("~")?;
        }
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
