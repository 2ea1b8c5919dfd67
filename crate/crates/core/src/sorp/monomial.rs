use std::cmp::Ordering;
use std::fmt;

use crate::extnat::ExtNat;
use crate::token::Token;

/// A monomial `x₁^e₁ ⋯ x_k^e_k` with exponents in `ℕ ∪ {∞}`.
///
/// Stored as factors sorted by token; zero exponents are never stored, so the
/// empty factor list is the monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Token, ExtNat)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { factors: Vec::new() }
    }

    pub fn var(token: Token) -> Monomial {
        Monomial { factors: vec![(token, ExtNat::ONE)] }
    }

    /// Builds a monomial from arbitrary factors, adding exponents of repeated
    /// tokens and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Token, ExtNat)>>(factors: I) -> Monomial {
        let mut fs: Vec<(Token, ExtNat)> = factors.into_iter().collect();
        fs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Token, ExtNat)> = Vec::with_capacity(fs.len());
        for (t, e) in fs {
            match out.last_mut() {
                Some((last, acc)) if *last == t => *acc = *acc + e,
                _ => out.push((t, e)),
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        Monomial { factors: out }
    }

    pub fn factors(&self) -> &[(Token, ExtNat)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, token: &Token) -> ExtNat {
        self.factors.binary_search_by(|(t, _)| t.cmp(token)).map(|i| self.factors[i].1).unwrap_or(ExtNat::ZERO)
    }

    /// `self ⪰ other`: every exponent of `self` is at most that of `other`.
    pub fn absorbs(&self, other: &Monomial) -> bool {
        let mut theirs = other.factors.iter().peekable();
        for (t, e) in &self.factors {
            loop {
                match theirs.peek() {
                    Some((u, _)) if u < t => {
                        theirs.next();
                    }
                    Some((u, f)) if u == t => {
                        if e > f {
                            return false;
                        }
                        theirs.next();
                        break;
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    /// `(number of tokens, number of ∞ exponents, sum of finite exponents)`.
    pub(crate) fn absorption_key(&self) -> (usize, usize, u64) {
        let infinite = self.factors.iter().filter(|(_, e)| e.is_inf()).count();
        let finite = self.factors.iter().filter_map(|(_, e)| e.finite()).map(u64::from).sum();
        (self.factors.len(), infinite, finite)
    }

    /// Exponent-wise addition.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    /// Product in `S∞[X]`, or in the dual quotient when `dual` is set, where a
    /// complementary pair makes the product zero (`None`).
    pub fn mul_checked(&self, other: &Monomial, dual: bool) -> Option<Monomial> {
        let m = self.mul(other);
        if dual && m.has_complementary_pair() {
            None
        } else {
            Some(m)
        }
    }

    /// Pointwise maximum of exponents: the greatest monomial below both.
    pub fn join(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.max(b))
    }

    fn merge(&self, other: &Monomial, f: impl Fn(ExtNat, ExtNat) -> ExtNat) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push((a[i].0.clone(), f(a[i].1, ExtNat::ZERO)));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), f(ExtNat::ZERO, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), f(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        Monomial { factors: out }
    }

    pub fn has_complementary_pair(&self) -> bool {
        self.factors.windows(2).any(|w| w[0].0.is_dual_of(&w[1].0))
    }

    /// `m^∞`: every positive exponent becomes `∞`.
    pub fn infinitary(&self) -> Monomial {
        Monomial { factors: self.factors.iter().map(|(t, _)| (t.clone(), ExtNat::Inf)).collect() }
    }

    pub fn widen(&self, threshold: u32) -> Monomial {
        let factors = self
            .factors
            .iter()
            .map(|(t, e)| match e {
                ExtNat::Fin(n) if *n >= threshold => (t.clone(), ExtNat::Inf),
                _ => (t.clone(), *e),
            })
            .collect();
        Monomial { factors }
    }
}

/// Canonical order: token sequences lexicographically, then exponent
/// sequences (with `∞` greatest).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let tokens = self.factors.iter().map(|(t, _)| t).cmp(other.factors.iter().map(|(t, _)| t));
        tokens.then_with(|| self.factors.iter().map(|(_, e)| e).cmp(other.factors.iter().map(|(_, e)| e)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (t, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                ExtNat::Fin(1) => write!(f, "{t}")?,
                _ => write!(f, "{t}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
