//! Random values, interpretations and formulas for the property suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::eval::Assignment;
use crate::extnat::ExtNat;
use crate::logic::{FixKind, Formula, GroundLiteral, Interpretation, Structure, Term, Universe, Vocabulary};
use crate::semiring::{Carrier, TokenSets, Value};
use crate::sorp::{Monomial, SorpPoly};
use crate::token::Token;

pub type Rng8 = ChaCha8Rng;

const POOL: [&str; 3] = ["a", "b", "c"];

/// The carriers covered by the algebraic suites.
pub fn all_carriers() -> Vec<Carrier> {
    [
        "bool",
        "nat",
        "natinf",
        "viterbi",
        "trop",
        "lukasiewicz",
        "minmax:lo<mid<hi",
        "posbool",
        "why",
        "natpoly",
        "sorp",
        "sorpdual",
    ]
    .iter()
    .map(|n| Carrier::parse(n).expect("known carrier"))
    .collect()
}

fn fraction(rng: &mut Rng8, max_den: u32) -> String {
    let q = rng.random_range(1..=max_den);
    let p = rng.random_range(0..=q);
    format!("{p}/{q}")
}

/// A random exponent in `{1, 2, 3, ∞}`.
pub fn exponent(rng: &mut Rng8) -> ExtNat {
    if rng.random_ratio(1, 5) {
        ExtNat::Inf
    } else {
        ExtNat::Fin(rng.random_range(1..=3))
    }
}

pub fn token(rng: &mut Rng8, dual: bool) -> Token {
    let name = POOL[rng.random_range(0..POOL.len())];
    if dual && rng.random_ratio(1, 3) {
        Token::negative(name)
    } else {
        Token::new(name)
    }
}

pub fn monomial(rng: &mut Rng8, dual: bool) -> Monomial {
    let n = rng.random_range(0..=3);
    Monomial::from_factors((0..n).map(|_| (token(rng, dual), exponent(rng))))
}

/// A polynomial with up to four monomials over the tokens `a, b, c`.
pub fn poly(rng: &mut Rng8, dual: bool) -> SorpPoly {
    let n = rng.random_range(0..=4);
    SorpPoly::maximals((0..n).map(|_| monomial(rng, dual)), dual)
}

fn symbolic(rng: &mut Rng8, carrier: &Carrier) -> Value {
    let dual = matches!(carrier, Carrier::SorpDual);
    let mut acc = carrier.zero();
    for _ in 0..rng.random_range(0..=3) {
        let mut term = carrier.one();
        for _ in 0..rng.random_range(0..=3) {
            let t = token(rng, dual || matches!(carrier, Carrier::PosBool));
            let atom = carrier.parse_value(&t.to_string()).expect("token value");
            term = term.mul(&atom).expect("same carrier");
        }
        acc = acc.add(&term).expect("same carrier");
    }
    acc
}

/// A random element of `carrier`.
pub fn value(rng: &mut Rng8, carrier: &Carrier) -> Value {
    let text = match carrier {
        Carrier::Bool => return Value::Bool(rng.random_bool(0.5)),
        Carrier::Nat => rng.random_range(0..5u32).to_string(),
        Carrier::NatInf if rng.random_ratio(1, 5) => "inf".to_string(),
        Carrier::NatInf => rng.random_range(0..5u32).to_string(),
        Carrier::Viterbi | Carrier::Lukasiewicz => fraction(rng, 6),
        Carrier::Tropical if rng.random_ratio(1, 5) => "inf".to_string(),
        Carrier::Tropical => format!("{}/{}", rng.random_range(0..=8u32), rng.random_range(1..=4u32)),
        Carrier::MinMax(scale) => return Value::MinMax(scale.clone(), rng.random_range(0..scale.levels().len())),
        Carrier::Sorp => return Value::Sorp(poly(rng, false)),
        Carrier::SorpDual => return Value::SorpDual(poly(rng, true)),
        Carrier::PosBool | Carrier::Why | Carrier::NatPoly => return symbolic(rng, carrier),
    };
    carrier.parse_value(&text).expect("generated value parses")
}

pub fn vocabulary() -> Vocabulary {
    Vocabulary::new([("E", 2), ("P", 1)]).expect("vocabulary")
}

/// `{u}` or `{u, v}`.
pub fn universe(rng: &mut Rng8) -> Universe {
    let names: &[&str] = if rng.random_bool(0.5) { &["u"] } else { &["u", "v"] };
    Universe::new(names.iter().copied()).expect("universe")
}

pub fn structure(rng: &mut Rng8, universe: &Universe, vocab: &Vocabulary) -> Structure {
    let mut s = Structure::new(universe.clone(), vocab.clone());
    for (rel, arity) in vocab.iter() {
        for t in universe.tuples(arity) {
            if rng.random_bool(0.5) {
                s.insert(rel, &t).expect("tuple in range");
            }
        }
    }
    s
}

pub fn literal_holds(s: &Structure, lit: &GroundLiteral) -> bool {
    let idx: Vec<usize> = lit.args.iter().map(|a| s.universe().index(a).expect("element")).collect();
    s.contains(&lit.rel, &idx) == lit.positive
}

/// A model-defining `S∞[X, X̄]`-interpretation of `s`: true literals carry
/// their most general token (or `1`), false literals are `0`.
pub fn model_defining(rng: &mut Rng8, s: &Structure) -> Result<Interpretation> {
    let mg = Interpretation::most_general(s.vocabulary().clone(), s.universe().clone())?;
    mg.map(Carrier::SorpDual, |lit, v| {
        Ok(if !literal_holds(s, lit) {
            Carrier::SorpDual.zero()
        } else if rng.random_ratio(1, 4) {
            Carrier::SorpDual.one()
        } else {
            v.clone()
        })
    })
}

/// Random values for every literal.
pub fn interpretation(
    rng: &mut Rng8,
    carrier: &Carrier,
    universe: &Universe,
    vocab: &Vocabulary,
) -> Result<Interpretation> {
    Interpretation::from_fn(carrier.clone(), universe.clone(), vocab.clone(), |_| Ok(value(rng, carrier)))
}

/// A random assignment of the dual token pairs `tokens` into `target` with
/// `h(x)·h(~x) = 0`.
pub fn dual_assignment(rng: &mut Rng8, tokens: &[Token], target: &Carrier) -> Assignment {
    let mut out = Assignment::new();
    for t in tokens.iter().filter(|t| !t.is_negated()) {
        let (p, n) = match target {
            Carrier::PosBool => match rng.random_range(0..4) {
                0 => (target.one(), target.zero()),
                1 => (target.zero(), target.one()),
                _ => (Value::PosBool(TokenSets::token(t.clone())), Value::PosBool(TokenSets::token(t.dual()))),
            },
            _ => {
                let nonzero = |rng: &mut Rng8| loop {
                    let v = value(rng, target);
                    if !v.is_zero() {
                        break v;
                    }
                };
                match rng.random_range(0..6) {
                    0 => (target.zero(), target.zero()),
                    1..=2 => (nonzero(rng), target.zero()),
                    _ => (target.zero(), nonzero(rng)),
                }
            }
        };
        out.insert(t.clone(), p);
        out.insert(t.dual(), n);
    }
    out
}

/// Random LFP sentences over `E/2`, `P/1` of bounded depth. Binders and
/// bound variables get fresh names; negations are only placed above
/// subformulas without free fixed-point variables, so every output passes
/// the positivity check.
pub struct FormulaGen<'a> {
    rng: &'a mut Rng8,
    universe: &'a Universe,
    fresh_var: usize,
    fresh_rel: usize,
}

#[derive(Clone, Default)]
struct Scope {
    vars: Vec<String>,
    fps: Vec<String>,
}

impl<'a> FormulaGen<'a> {
    pub fn new(rng: &'a mut Rng8, universe: &'a Universe) -> FormulaGen<'a> {
        FormulaGen { rng, universe, fresh_var: 0, fresh_rel: 0 }
    }

    /// A sentence of depth at most `depth`.
    pub fn sentence(&mut self, depth: usize) -> Formula {
        self.gen(depth, &Scope::default())
    }

    /// `[gfp R(x). θ](c)` with a random body of depth at most `depth - 1`.
    pub fn gfp_sentence(&mut self, depth: usize) -> Formula {
        self.fix(FixKind::Gfp, depth, &Scope::default())
    }

    fn term(&mut self, scope: &Scope) -> Term {
        if !scope.vars.is_empty() && self.rng.random_ratio(3, 4) {
            // Prefer the most recently bound variables.
            let k = scope.vars.len();
            let i = if self.rng.random_bool(0.5) { k - 1 } else { self.rng.random_range(0..k) };
            Term::Var(scope.vars[i].clone())
        } else {
            Term::Const(self.universe.name(self.rng.random_range(0..self.universe.len())).to_string())
        }
    }

    fn leaf(&mut self, scope: &Scope) -> Formula {
        let choice = self.rng.random_range(0..if scope.fps.is_empty() { 6 } else { 10 });
        match choice {
            0 | 1 => {
                let args = vec![self.term(scope), self.term(scope)];
                if choice == 0 {
                    Formula::rel("E", args)
                } else {
                    Formula::neg_rel("E", args)
                }
            }
            2 => Formula::rel("P", vec![self.term(scope)]),
            3 => Formula::neg_rel("P", vec![self.term(scope)]),
            4 => Formula::Eq(self.term(scope), self.term(scope)),
            5 => Formula::Neq(self.term(scope), self.term(scope)),
            _ => {
                let r = scope.fps[self.rng.random_range(0..scope.fps.len())].clone();
                Formula::fp_var(&r, vec![self.term(scope)])
            }
        }
    }

    fn fix(&mut self, kind: FixKind, depth: usize, scope: &Scope) -> Formula {
        let rel = format!("R{}", self.fresh_rel);
        let var = format!("x{}", self.fresh_var);
        self.fresh_rel += 1;
        self.fresh_var += 1;
        let args = vec![self.term(scope)];
        let mut inner = scope.clone();
        inner.vars.push(var.clone());
        inner.fps.push(rel.clone());
        let body = self.gen(depth.saturating_sub(1).max(1), &inner);
        Formula::fix(kind, &rel, &[var.as_str()], body, args)
    }

    fn gen(&mut self, depth: usize, scope: &Scope) -> Formula {
        if depth <= 1 || self.rng.random_ratio(1, 8) {
            return self.leaf(scope);
        }
        match self.rng.random_range(0..11) {
            0 | 1 => {
                let a = self.gen(depth - 1, scope);
                Formula::or(a, self.gen(depth - 1, scope))
            }
            2 | 3 => {
                let a = self.gen(depth - 1, scope);
                Formula::and(a, self.gen(depth - 1, scope))
            }
            4..=6 => {
                let var = format!("x{}", self.fresh_var);
                self.fresh_var += 1;
                let mut inner = scope.clone();
                inner.vars.push(var.clone());
                let body = self.gen(depth - 1, &inner);
                if self.rng.random_ratio(2, 3) {
                    Formula::exists(&var, body)
                } else {
                    Formula::forall(&var, body)
                }
            }
            7 => {
                let inner = Scope { vars: scope.vars.clone(), fps: Vec::new() };
                Formula::not(self.gen(depth - 1, &inner))
            }
            _ => {
                let kind = if self.rng.random_bool(0.5) { FixKind::Lfp } else { FixKind::Gfp };
                self.fix(kind, depth, scope)
            }
        }
    }
}
