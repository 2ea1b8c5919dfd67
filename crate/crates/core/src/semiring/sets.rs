use std::collections::BTreeSet;
use std::fmt;

use crate::token::Token;

/// A finite set of token sets. Backs both `PosBool(X)` (kept as a minimal
/// monotone DNF) and the Why-semiring `W[X]` (kept as is).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TokenSets(BTreeSet<BTreeSet<Token>>);

impl TokenSets {
    pub fn empty() -> TokenSets {
        TokenSets(BTreeSet::new())
    }

    pub fn unit() -> TokenSets {
        TokenSets(BTreeSet::from([BTreeSet::new()]))
    }

    /// Plain collection, as used by `W[X]`.
    pub fn raw<I: IntoIterator<Item = BTreeSet<Token>>>(sets: I) -> TokenSets {
        TokenSets(sets.into_iter().collect())
    }

    /// Minimal DNF: drops clauses with a complementary pair, then every clause
    /// that strictly contains another.
    pub fn minimized<I: IntoIterator<Item = BTreeSet<Token>>>(sets: I) -> TokenSets {
        let clauses: Vec<BTreeSet<Token>> = sets
            .into_iter()
            .filter(|c| !c.iter().any(|t| !t.is_negated() && c.contains(&t.dual())))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let kept = clauses.iter().filter(|c| !clauses.iter().any(|d| d != *c && d.is_subset(c))).cloned().collect();
        TokenSets(kept)
    }

    /// `{{x}}` for a single token.
    pub fn token(t: Token) -> TokenSets {
        TokenSets(BTreeSet::from([BTreeSet::from([t])]))
    }

    /// The top element of `W[X]`: all subsets of `tokens`.
    pub fn why_top(tokens: &BTreeSet<Token>) -> TokenSets {
        let tokens: Vec<&Token> = tokens.iter().collect();
        let mut all = BTreeSet::new();
        for mask in 0u64..(1u64 << tokens.len()) {
            let set =
                tokens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| (*t).clone()).collect();
            all.insert(set);
        }
        TokenSets(all)
    }

    pub fn sets(&self) -> &BTreeSet<BTreeSet<Token>> {
        &self.0
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.0.iter().flatten()
    }

    pub fn is_subset(&self, other: &TokenSets) -> bool {
        self.0.is_subset(&other.0)
    }

    pub(crate) fn posbool_add(&self, other: &TokenSets) -> TokenSets {
        TokenSets::minimized(self.0.iter().chain(&other.0).cloned())
    }

    pub(crate) fn posbool_mul(&self, other: &TokenSets) -> TokenSets {
        TokenSets::minimized(self.products(other))
    }

    pub(crate) fn why_add(&self, other: &TokenSets) -> TokenSets {
        TokenSets(self.0.union(&other.0).cloned().collect())
    }

    pub(crate) fn why_mul(&self, other: &TokenSets) -> TokenSets {
        TokenSets(self.products(other).collect())
    }

    fn products<'a>(&'a self, other: &'a TokenSets) -> impl Iterator<Item = BTreeSet<Token>> + 'a {
        self.0.iter().flat_map(move |a| other.0.iter().map(move |b| a.union(b).cloned().collect()))
    }
}

impl fmt::Display for TokenSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, set) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if set.is_empty() {
                f.write_str("1")?;
            }
            for (j, t) in set.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TokenSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
