use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Universe, Vocabulary};
use crate::error::{Error, Result};
use crate::semiring::{Carrier, Value};
use crate::sorp::SorpPoly;
use crate::token::{is_identifier, Token};

/// Default bound on the number of undetermined atoms for
/// [`Interpretation::compatible_models`].
pub const DEFAULT_MODEL_CAP: usize = 16;

/// A positive or negative relational literal over universe elements,
/// written `E(u,v)` or `!E(u,v)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLiteral {
    pub rel: String,
    pub args: Vec<String>,
    pub positive: bool,
}

impl GroundLiteral {
    pub fn new(rel: &str, args: &[&str], positive: bool) -> GroundLiteral {
        GroundLiteral { rel: rel.into(), args: args.iter().map(|a| a.to_string()).collect(), positive }
    }

    pub fn negate(&self) -> GroundLiteral {
        GroundLiteral { positive: !self.positive, ..self.clone() }
    }

    pub fn parse(text: &str) -> Result<GroundLiteral> {
        let bad =
            |reason: &str| Error::InvalidValue { carrier: "literal".into(), text: text.into(), reason: reason.into() };
        let t = text.trim();
        let (positive, t) = match t.strip_prefix('!') {
            Some(rest) => (false, rest.trim_start()),
            None => (true, t),
        };
        let open = t.find('(').ok_or_else(|| bad("expected NAME(args)"))?;
        let inner = t[open + 1..].strip_suffix(')').ok_or_else(|| bad("missing closing parenthesis"))?;
        let rel = t[..open].trim();
        if !is_identifier(rel) {
            return Err(bad("relation name is not an identifier"));
        }
        let args: Vec<String> = inner.split(',').map(|a| a.trim().to_string()).collect();
        if args.iter().any(|a| !is_identifier(a)) {
            return Err(bad("arguments must be element names"));
        }
        Ok(GroundLiteral { rel: rel.into(), args, positive })
    }
}

impl fmt::Display for GroundLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}({})", self.rel, self.args.join(","))
    }
}

/// A finite relational structure over a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    universe: Universe,
    vocab: Vocabulary,
    relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

impl Structure {
    pub fn new(universe: Universe, vocab: Vocabulary) -> Structure {
        let relations = vocab.iter().map(|(r, _)| (r.to_string(), BTreeSet::new())).collect();
        Structure { universe, vocab, relations }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn insert(&mut self, rel: &str, tuple: &[usize]) -> Result<()> {
        let arity = self.vocab.arity(rel).ok_or_else(|| Error::UnknownRelation(rel.into()))?;
        if arity != tuple.len() {
            return Err(Error::ArityMismatch { relation: rel.into(), expected: arity, found: tuple.len() });
        }
        self.relations.entry(rel.into()).or_default().insert(tuple.to_vec());
        Ok(())
    }

    /// Inserts a tuple given by element names.
    pub fn insert_named(&mut self, rel: &str, tuple: &[&str]) -> Result<()> {
        let idx = tuple
            .iter()
            .map(|n| self.universe.index(n).ok_or_else(|| Error::MalformedFormula(format!("unknown element {n}"))))
            .collect::<Result<Vec<_>>>()?;
        self.insert(rel, &idx)
    }

    pub fn contains(&self, rel: &str, tuple: &[usize]) -> bool {
        self.relations.get(rel).is_some_and(|s| s.contains(tuple))
    }

    pub fn tuples(&self, rel: &str) -> impl Iterator<Item = &Vec<usize>> {
        self.relations.get(rel).into_iter().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct RelValues {
    pos: Vec<Value>,
    neg: Vec<Value>,
}

/// A total map from ground literals to values of one carrier. Equality
/// literals are not stored; they evaluate to `1` when true and `0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    carrier: Carrier,
    universe: Universe,
    vocab: Vocabulary,
    values: BTreeMap<String, RelValues>,
}

impl Interpretation {
    /// Builds an interpretation by querying `value` for every ground literal,
    /// positive before negative, relations in name order, tuples row-major.
    pub fn from_fn<F>(carrier: Carrier, universe: Universe, vocab: Vocabulary, mut value: F) -> Result<Interpretation>
    where
        F: FnMut(&GroundLiteral) -> Result<Value>,
    {
        let mut values = BTreeMap::new();
        for (rel, arity) in vocab.iter() {
            let mut rv = RelValues { pos: Vec::new(), neg: Vec::new() };
            for t in universe.tuples(arity) {
                let args: Vec<String> = t.iter().map(|&e| universe.name(e).to_string()).collect();
                for positive in [true, false] {
                    let lit = GroundLiteral { rel: rel.to_string(), args: args.clone(), positive };
                    let v = value(&lit)?;
                    carrier.check(&v)?;
                    if positive {
                        rv.pos.push(v);
                    } else {
                        rv.neg.push(v);
                    }
                }
            }
            values.insert(rel.to_string(), rv);
        }
        Ok(Interpretation { carrier, universe, vocab, values })
    }

    /// The most general `S∞[X, X̄]`-interpretation: every atom `R(ā)` gets a
    /// fresh token pair `R_a1_…_ak` / `~R_a1_…_ak`.
    pub fn most_general(vocab: Vocabulary, universe: Universe) -> Result<Interpretation> {
        let mut names = BTreeSet::new();
        let mut collision = false;
        for (rel, arity) in vocab.iter() {
            for t in universe.tuples(arity) {
                collision |= !names.insert(atom_token_name(rel, &t, &universe));
            }
        }
        let pick = |lit: &GroundLiteral| -> Result<Value> {
            let idx: Vec<usize> = lit.args.iter().map(|a| universe.index(a).expect("element")).collect();
            let name = if collision {
                format!("{}_{}", lit.rel, universe.tuple_index(&idx))
            } else {
                atom_token_name(&lit.rel, &idx, &universe)
            };
            if !is_identifier(&name) {
                return Err(Error::MalformedFormula(format!("cannot derive a token name for {lit}")));
            }
            let tok = if lit.positive { Token::new(&name) } else { Token::negative(&name) };
            Ok(Value::SorpDual(SorpPoly::token(tok, true)))
        };
        let (u, v) = (universe.clone(), vocab.clone());
        let interp = Interpretation::from_fn(Carrier::SorpDual, u, v, pick)?;
        if !interp.is_model_compatible() {
            return Err(Error::NotModelCompatible("derived token names are not distinct".into()));
        }
        Ok(interp)
    }

    /// The model-defining interpretation of a structure: true literals map to
    /// `1`, false ones to `0`.
    pub fn from_structure(carrier: Carrier, structure: &Structure) -> Result<Interpretation> {
        let s = structure;
        let c = carrier.clone();
        Interpretation::from_fn(carrier, s.universe.clone(), s.vocab.clone(), |lit| {
            let idx = s.literal_tuple(lit)?;
            Ok(c.from_bool(s.contains(&lit.rel, &idx) == lit.positive))
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Value of `R(tuple)` (or its negation) by element indices.
    pub fn get(&self, rel: &str, tuple: &[usize], positive: bool) -> Option<&Value> {
        let rv = self.values.get(rel)?;
        if tuple.len() != self.vocab.arity(rel)? || tuple.iter().any(|&e| e >= self.universe.len()) {
            return None;
        }
        let i = self.universe.tuple_index(tuple);
        Some(if positive { &rv.pos[i] } else { &rv.neg[i] })
    }

    pub fn value(&self, lit: &GroundLiteral) -> Result<&Value> {
        let idx = self.literal_tuple(lit)?;
        self.get(&lit.rel, &idx, lit.positive).ok_or_else(|| Error::ArityMismatch {
            relation: lit.rel.clone(),
            expected: self.vocab.arity(&lit.rel).unwrap_or(0),
            found: lit.args.len(),
        })
    }

    fn literal_tuple(&self, lit: &GroundLiteral) -> Result<Vec<usize>> {
        literal_tuple(&self.universe, &self.vocab, lit)
    }

    /// All `(literal, value)` pairs in construction order.
    pub fn literals(&self) -> impl Iterator<Item = (GroundLiteral, &Value)> + '_ {
        self.values.iter().flat_map(move |(rel, rv)| {
            let arity = self.vocab.arity(rel).unwrap_or(0);
            (0..rv.pos.len()).flat_map(move |i| {
                let args: Vec<String> =
                    self.universe.tuple(arity, i).iter().map(|&e| self.universe.name(e).to_string()).collect();
                [
                    (GroundLiteral { rel: rel.clone(), args: args.clone(), positive: true }, &rv.pos[i]),
                    (GroundLiteral { rel: rel.clone(), args, positive: false }, &rv.neg[i]),
                ]
            })
        })
    }

    /// Applies `h` to every literal value, producing an interpretation in
    /// `target`.
    pub fn map<F>(&self, target: Carrier, mut h: F) -> Result<Interpretation>
    where
        F: FnMut(&GroundLiteral, &Value) -> Result<Value>,
    {
        Interpretation::from_fn(target, self.universe.clone(), self.vocab.clone(), |lit| h(lit, self.value(lit)?))
    }

    /// Replaces the value of one literal.
    pub fn with_value(&self, lit: &GroundLiteral, value: Value) -> Result<Interpretation> {
        self.carrier.check(&value)?;
        let idx = self.literal_tuple(lit)?;
        let mut out = self.clone();
        let i = self.universe.tuple_index(&idx);
        let rv = out.values.get_mut(&lit.rel).expect("checked relation");
        if lit.positive {
            rv.pos[i] = value;
        } else {
            rv.neg[i] = value;
        }
        Ok(out)
    }

    /// Every token occurring in some literal value.
    pub fn tokens(&self) -> BTreeSet<Token> {
        self.values.values().flat_map(|rv| rv.pos.iter().chain(&rv.neg)).flat_map(Value::tokens).collect()
    }

    /// For each atom, exactly one of `π(Rā)`, `π(¬Rā)` is zero.
    pub fn is_model_defining(&self) -> bool {
        self.values.values().all(|rv| rv.pos.iter().zip(&rv.neg).all(|(p, n)| p.is_zero() != n.is_zero()))
    }

    /// The structure containing `ā ∈ R` exactly when `π(Rā) ≠ 0`.
    pub fn induced_structure(&self) -> Result<Structure> {
        if !self.is_model_defining() {
            let lit = self
                .literals()
                .find(|(l, v)| l.positive && self.value(&l.negate()).is_ok_and(|n| n.is_zero() == v.is_zero()))
                .map(|(l, _)| l.to_string())
                .unwrap_or_default();
            return Err(Error::NotModelDefining(format!("atom {lit}")));
        }
        let mut s = Structure::new(self.universe.clone(), self.vocab.clone());
        for (rel, rv) in &self.values {
            let arity = self.vocab.arity(rel).unwrap_or(0);
            for (i, p) in rv.pos.iter().enumerate() {
                if !p.is_zero() {
                    s.insert(rel, &self.universe.tuple(arity, i))?;
                }
            }
        }
        Ok(s)
    }

    /// Classifies each atom as fixed (`{0,1}` pair) or open (a fresh dual
    /// token pair). `None` if the interpretation is not model-compatible.
    fn atom_kinds(&self) -> Option<Vec<(String, usize, Option<bool>)>> {
        if self.carrier != Carrier::SorpDual {
            return None;
        }
        let mut used = BTreeSet::new();
        let mut kinds = Vec::new();
        for (rel, rv) in &self.values {
            for (i, (p, n)) in rv.pos.iter().zip(&rv.neg).enumerate() {
                if (p.is_zero() && n.is_one()) || (p.is_one() && n.is_zero()) {
                    kinds.push((rel.clone(), i, Some(p.is_one())));
                    continue;
                }
                let x = single_token(p)?;
                let nx = single_token(n)?;
                if x.is_negated() || nx != x.dual() || !used.insert(x.name().to_string()) {
                    return None;
                }
                kinds.push((rel.clone(), i, None));
            }
        }
        Some(kinds)
    }

    /// Every atom gets either a fresh token pair `(x, ~x)` or values `{0, 1}`,
    /// and no token is shared between atoms.
    pub fn is_model_compatible(&self) -> bool {
        self.atom_kinds().is_some()
    }

    /// All structures agreeing with the atoms fixed to `0/1`, with open atoms
    /// ranging freely. Errors above `cap` open atoms.
    pub fn compatible_models(&self, cap: usize) -> Result<Vec<Structure>> {
        let kinds = self
            .atom_kinds()
            .ok_or_else(|| Error::NotModelCompatible("atoms must carry fresh token pairs or 0/1".into()))?;
        let open: Vec<(&str, usize)> =
            kinds.iter().filter(|k| k.2.is_none()).map(|(r, i, _)| (r.as_str(), *i)).collect();
        if open.len() > cap {
            return Err(Error::TooManyModels { open: open.len(), cap });
        }
        let mut base = Structure::new(self.universe.clone(), self.vocab.clone());
        for (rel, i, fixed) in &kinds {
            if *fixed == Some(true) {
                let arity = self.vocab.arity(rel).unwrap_or(0);
                base.insert(rel, &self.universe.tuple(arity, *i))?;
            }
        }
        let mut out = Vec::with_capacity(1 << open.len());
        for mask in 0u64..(1u64 << open.len()) {
            let mut s = base.clone();
            for (bit, (rel, i)) in open.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let arity = self.vocab.arity(rel).unwrap_or(0);
                    s.insert(rel, &self.universe.tuple(arity, *i))?;
                }
            }
            out.push(s);
        }
        Ok(out)
    }
}

fn single_token(v: &Value) -> Option<Token> {
    let p = v.as_sorp()?;
    match p.monomials() {
        [m] => match m.factors() {
            [(t, e)] if *e == crate::extnat::ExtNat::ONE => Some(t.clone()),
            _ => None,
        },
        _ => None,
    }
}

fn atom_token_name(rel: &str, tuple: &[usize], universe: &Universe) -> String {
    let mut s = rel.to_string();
    for &e in tuple {
        s.push('_');
        s.push_str(universe.name(e));
    }
    s
}

pub(crate) fn literal_tuple(universe: &Universe, vocab: &Vocabulary, lit: &GroundLiteral) -> Result<Vec<usize>> {
    let arity = vocab.arity(&lit.rel).ok_or_else(|| Error::UnknownRelation(lit.rel.clone()))?;
    if arity != lit.args.len() {
        return Err(Error::ArityMismatch { relation: lit.rel.clone(), expected: arity, found: lit.args.len() });
    }
    lit.args
        .iter()
        .map(|a| universe.index(a).ok_or_else(|| Error::MalformedFormula(format!("unknown element {a} in {lit}"))))
        .collect()
}

impl Structure {
    fn literal_tuple(&self, lit: &GroundLiteral) -> Result<Vec<usize>> {
        literal_tuple(&self.universe, &self.vocab, lit)
    }
}
