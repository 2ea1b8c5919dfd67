//! LFP syntax over finite relational vocabularies and K-interpretations of
//! ground literals.

mod formula;
mod interp;
mod nnf;

use std::collections::BTreeMap;

pub use formula::{FixKind, Formula, Term};
pub use interp::{GroundLiteral, Interpretation, Structure, DEFAULT_MODEL_CAP};
pub use nnf::{check_positivity, nnf};

use crate::error::{Error, Result};

/// Relation names with their arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vocabulary {
    relations: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn new<I, S>(relations: I) -> Result<Vocabulary>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, arity) in relations {
            let name = name.into();
            if arity == 0 {
                return Err(Error::MalformedFormula(format!("relation {name} has arity 0")));
            }
            if map.insert(name.clone(), arity).is_some() {
                return Err(Error::MalformedFormula(format!("relation {name} declared twice")));
            }
        }
        Ok(Vocabulary { relations: map })
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.relations.contains_key(name)
    }

    /// Relations in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// A finite, nonempty, ordered set of element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    elements: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(elements: I) -> Result<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::MalformedFormula("empty universe".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::MalformedFormula(format!("element {e} listed twice")));
            }
        }
        Ok(Universe { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Number of tuples in `A^arity`.
    pub fn tuple_count(&self, arity: usize) -> usize {
        self.len().pow(arity as u32)
    }

    /// The `index`-th tuple of `A^arity` in row-major order.
    pub fn tuple(&self, arity: usize, mut index: usize) -> Vec<usize> {
        let n = self.len();
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = index % n;
            index /= n;
        }
        t
    }

    /// Row-major index of a tuple.
    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &e| acc * self.len() + e)
    }

    pub fn tuples(&self, arity: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.tuple_count(arity)).map(move |i| self.tuple(arity, i))
    }

    pub fn fmt_tuple(&self, tuple: &[usize]) -> String {
        tuple.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(",")
    }
}
