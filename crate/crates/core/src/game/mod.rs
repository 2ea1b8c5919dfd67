//! Parity model-checking games for LFP sentences in negation normal form.
//!
//! Positions are subformulas instantiated with universe elements. Verifier
//! moves at disjunctions and existential quantifiers, Falsifier at
//! conjunctions and universal quantifiers; fixed-point formulas and
//! fixed-point atoms have a single successor (the binder body) and are
//! assigned to Verifier. Terminal positions are literals. Fixed-point atoms
//! carry the priority of their binder: even for greatest, odd for least
//! fixed points.

mod build;
mod dot;
mod play;

use std::collections::BTreeMap;
use std::fmt;

pub use build::assign_priorities;
pub use play::PlayCountTable;

use crate::error::{Error, Result};
use crate::logic::{nnf, FixKind, Formula, GroundLiteral, Interpretation, Universe, Vocabulary};
use crate::semiring::Value;

/// Default cap on the number of positional strategies enumerated.
pub const DEFAULT_STRATEGY_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Owner {
    Verifier,
    Falsifier,
}

/// What a finished play ends in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Literal(GroundLiteral),
    /// An equality or inequality literal; true ones are worth `1`, false ones `0`.
    Equality(bool),
    /// The cut marker of a strategy truncation.
    Scissor,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Literal(l) => write!(f, "{l}"),
            Outcome::Equality(b) => write!(f, "{b}"),
            Outcome::Scissor => f.write_str("cut"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    /// Unique, stable identifier (the position text, disambiguated if needed).
    pub id: String,
    /// The instantiated subformula.
    pub text: String,
    pub owner: Owner,
    /// Fixed-point atoms and fixed-point formulas have exactly one successor.
    pub neutral: bool,
    pub priority: Option<u32>,
    /// For fixed-point atoms `R(ā)`, the relation `R`.
    pub fp_relation: Option<String>,
    pub outcome: Option<Outcome>,
}

/// A choice of one successor at every Verifier position with several.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PositionalStrategy {
    pub choice: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone)]
pub struct Game {
    universe: Universe,
    positions: Vec<Position>,
    succ: Vec<Vec<usize>>,
    root: usize,
    binder_priority: BTreeMap<String, u32>,
    binder_kind: BTreeMap<String, FixKind>,
    outermost: Vec<String>,
    choice_positions: Vec<usize>,
}

impl Game {
    /// Builds the game of an NNF sentence.
    pub fn build(psi: &Formula, vocab: &Vocabulary, universe: &Universe) -> Result<Game> {
        build::build(psi, vocab, universe)
    }

    /// Builds the game of an arbitrary sentence after bringing it into NNF.
    pub fn for_sentence(f: &Formula, interp: &Interpretation) -> Result<Game> {
        crate::logic::check_positivity(f)?;
        let g = nnf(f)?;
        Game::build(&g, interp.vocabulary(), interp.universe())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn position(&self, i: usize) -> &Position {
        &self.positions[i]
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.positions.iter().position(|p| p.id == id)
    }

    /// Binder priorities by relation name.
    pub fn priorities(&self) -> &BTreeMap<String, u32> {
        &self.binder_priority
    }

    pub fn terminals(&self) -> impl Iterator<Item = (usize, &Outcome)> {
        self.positions.iter().enumerate().filter_map(|(i, p)| p.outcome.as_ref().map(|o| (i, o)))
    }

    /// Verifier positions with at least two distinct successors, in
    /// construction (breadth-first) order.
    pub fn choice_positions(&self) -> &[usize] {
        &self.choice_positions
    }

    /// Number of positional strategies, saturating at `u128::MAX`.
    pub fn strategy_count(&self) -> u128 {
        self.choice_positions
            .iter()
            .try_fold(1u128, |acc, &v| acc.checked_mul(self.succ[v].len() as u128))
            .unwrap_or(u128::MAX)
    }

    /// The `index`-th positional strategy in lexicographic order: the first
    /// choice position is the most significant digit, successors are tried
    /// in edge order.
    pub fn strategy(&self, index: u128) -> PositionalStrategy {
        let mut rest = index;
        let mut choice = BTreeMap::new();
        for &v in self.choice_positions.iter().rev() {
            let k = self.succ[v].len() as u128;
            choice.insert(v, self.succ[v][(rest % k) as usize]);
            rest /= k;
        }
        PositionalStrategy { choice }
    }

    /// All positional strategies, erroring above `cap`.
    pub fn strategies(&self, cap: u128) -> Result<impl Iterator<Item = PositionalStrategy> + '_> {
        let count = self.strategy_count();
        if count > cap {
            return Err(Error::StrategySpaceTooLarge { count, cap });
        }
        Ok((0..count).map(move |i| self.strategy(i)))
    }

    /// Successors a play may take from `v` under `s`.
    pub(crate) fn moves(&self, s: &PositionalStrategy, v: usize) -> Result<Vec<usize>> {
        let p = &self.positions[v];
        if p.owner == Owner::Verifier && self.succ[v].len() > 1 {
            match s.choice.get(&v) {
                Some(&w) if self.succ[v].contains(&w) => Ok(vec![w]),
                Some(&w) => {
                    Err(Error::InvalidStrategy(format!("{} is not a successor of {}", self.positions[w].id, p.id)))
                }
                None => Err(Error::InvalidStrategy(format!("no choice at {}", p.id))),
            }
        } else {
            Ok(self.succ[v].clone())
        }
    }

    /// Every infinite play from `from` consistent with `s` satisfies the
    /// parity condition.
    pub fn winning_infinite_plays(&self, s: &PositionalStrategy, from: usize) -> Result<bool> {
        Ok(play::PlayGraph::from_strategy(self, s, from)?.all_infinite_plays_winning())
    }

    /// Number of plays from `from` consistent with `s`, per outcome.
    pub fn play_counts(&self, s: &PositionalStrategy, from: usize) -> Result<PlayCountTable> {
        Ok(play::PlayGraph::from_strategy(self, s, from)?.play_counts())
    }

    /// `π⟦S⟧`: zero if some consistent infinite play is lost, otherwise the
    /// product of the outcome values raised to their play counts.
    pub fn strategy_value(&self, interp: &Interpretation, s: &PositionalStrategy, from: usize) -> Result<Value> {
        play::PlayGraph::from_strategy(self, s, from)?.value(interp, None)
    }

    /// Supremum of the values of all positional strategies.
    pub fn positional_strategy_sup(&self, interp: &Interpretation, from: usize, cap: u128) -> Result<Value> {
        let mut acc = interp.carrier().zero();
        for s in self.strategies(cap)? {
            acc = acc.add(&self.strategy_value(interp, &s, from)?)?;
        }
        Ok(acc)
    }

    /// Value of the `(R, n)`-truncation of `s`: plays are followed until
    /// their `n`-th `R`-atom, which is replaced by a cut worth
    /// `scissor_value`.
    pub fn truncation_value(
        &self,
        interp: &Interpretation,
        s: &PositionalStrategy,
        relation: &str,
        n: usize,
        scissor_value: &Value,
    ) -> Result<Value> {
        if self.outermost.len() != 1 || self.outermost[0] != relation {
            return Err(Error::UnsupportedNesting(format!(
                "truncation needs a single outermost binder {relation}, found [{}]",
                self.outermost.join(", ")
            )));
        }
        play::PlayGraph::truncated(self, s, self.root, relation, n)?.value(interp, Some(scissor_value))
    }

    pub fn binder_kind(&self, relation: &str) -> Option<FixKind> {
        self.binder_kind.get(relation).copied()
    }

    /// Graphviz rendering; terminal labels show their value when `interp`
    /// is given.
    pub fn to_dot(&self, interp: Option<&Interpretation>) -> String {
        dot::to_dot(self, interp)
    }
}
