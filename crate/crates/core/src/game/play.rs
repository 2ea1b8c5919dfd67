use std::collections::{BTreeMap, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{Game, Outcome, PositionalStrategy};
use crate::error::Result;
use crate::extnat::ExtNat;
use crate::logic::Interpretation;
use crate::semiring::Value;

/// Number of consistent plays per outcome.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlayCountTable {
    pub counts: BTreeMap<Outcome, ExtNat>,
    /// Every consistent infinite play is won by Verifier.
    pub infinite_ok: bool,
}

/// The finite graph of plays consistent with a strategy: every node has
/// the successors a play may take, with multiplicity.
pub(super) struct PlayGraph {
    succ: Vec<Vec<usize>>,
    priority: Vec<Option<u32>>,
    outcome: Vec<Option<Outcome>>,
}

impl PlayGraph {
    pub(super) fn from_strategy(game: &Game, s: &PositionalStrategy, from: usize) -> Result<PlayGraph> {
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![from];
        local.insert(from, 0);
        let mut succ = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            let mut out = Vec::new();
            for w in game.moves(s, v)? {
                let id = *local.entry(w).or_insert_with(|| {
                    order.push(w);
                    order.len() - 1
                });
                out.push(id);
            }
            succ.push(out);
            i += 1;
        }
        Ok(PlayGraph {
            succ,
            priority: order.iter().map(|&v| game.positions[v].priority).collect(),
            outcome: order.iter().map(|&v| game.positions[v].outcome.clone()).collect(),
        })
    }

    /// Layered copy of the strategy graph tracking how many `R`-atoms a
    /// play has visited; the `n`-th one is replaced by a cut.
    pub(super) fn truncated(
        game: &Game,
        s: &PositionalStrategy,
        from: usize,
        relation: &str,
        n: usize,
    ) -> Result<PlayGraph> {
        let is_r = |v: usize| game.positions[v].fp_relation.as_deref() == Some(relation);
        let mut g = PlayGraph { succ: Vec::new(), priority: Vec::new(), outcome: Vec::new() };
        let mut scissor = None;
        let mut cut = |g: &mut PlayGraph| {
            *scissor.get_or_insert_with(|| {
                g.succ.push(Vec::new());
                g.priority.push(None);
                g.outcome.push(Some(Outcome::Scissor));
                g.succ.len() - 1
            })
        };
        let start = usize::from(is_r(from));
        if start >= n {
            cut(&mut g);
            return Ok(g);
        }
        let mut local: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order = vec![(from, start)];
        local.insert((from, start), 0);
        g.succ.push(Vec::new());
        g.priority.push(game.positions[from].priority);
        g.outcome.push(game.positions[from].outcome.clone());
        let mut i = 0;
        while i < order.len() {
            let (v, k) = order[i];
            let here = local[&(v, k)];
            for w in game.moves(s, v)? {
                let k2 = k + usize::from(is_r(w));
                let id = if k2 >= n {
                    cut(&mut g)
                } else if let Some(&id) = local.get(&(w, k2)) {
                    id
                } else {
                    g.succ.push(Vec::new());
                    g.priority.push(game.positions[w].priority);
                    g.outcome.push(game.positions[w].outcome.clone());
                    let id = g.succ.len() - 1;
                    local.insert((w, k2), id);
                    order.push((w, k2));
                    id
                };
                g.succ[here].push(id);
            }
            i += 1;
        }
        Ok(g)
    }

    fn graph(&self, keep: impl Fn(usize) -> bool) -> DiGraph<usize, ()> {
        let mut g = DiGraph::new();
        let idx: Vec<Option<NodeIndex>> = (0..self.succ.len()).map(|v| keep(v).then(|| g.add_node(v))).collect();
        for (v, out) in self.succ.iter().enumerate() {
            for &w in out {
                if let (Some(a), Some(b)) = (idx[v], idx[w]) {
                    g.add_edge(a, b, ());
                }
            }
        }
        g
    }

    fn cyclic(g: &DiGraph<usize, ()>, scc: &[NodeIndex]) -> bool {
        scc.len() > 1 || g.contains_edge(scc[0], scc[0])
    }

    /// No cycle has an odd least priority. A cycle through priority `p` with
    /// all priorities `≥ p` exists iff some `p`-node sits in a nontrivial
    /// strongly connected component of the nodes with priority `≥ p`.
    pub(super) fn all_infinite_plays_winning(&self) -> bool {
        let mut odd: Vec<u32> = self.priority.iter().flatten().copied().filter(|p| p % 2 == 1).collect();
        odd.sort_unstable();
        odd.dedup();
        for p in odd {
            let g = self.graph(|v| self.priority[v].is_none_or(|q| q >= p));
            for scc in tarjan_scc(&g) {
                if Self::cyclic(&g, &scc) && scc.iter().any(|&i| self.priority[g[i]] == Some(p)) {
                    return false;
                }
            }
        }
        true
    }

    /// Path counts from the root to every outcome node; a count is infinite
    /// when some path to it passes through a cycle.
    pub(super) fn play_counts(&self) -> PlayCountTable {
        let g = self.graph(|_| true);
        let mut count = vec![ExtNat::ZERO; self.succ.len()];
        if !self.succ.is_empty() {
            count[0] = ExtNat::ONE;
        }
        // Tarjan yields components in reverse topological order.
        for scc in tarjan_scc(&g).into_iter().rev() {
            let nodes: Vec<usize> = scc.iter().map(|&i| g[i]).collect();
            if Self::cyclic(&g, &scc) && nodes.iter().any(|&v| !count[v].is_zero()) {
                for &v in &nodes {
                    count[v] = ExtNat::Inf;
                }
            }
            for &v in &nodes {
                if count[v].is_zero() {
                    continue;
                }
                for &w in &self.succ[v] {
                    if !nodes.contains(&w) {
                        count[w] = count[w] + count[v];
                    }
                }
            }
        }
        let mut counts = BTreeMap::new();
        for (v, o) in self.outcome.iter().enumerate() {
            if let Some(o) = o {
                if !count[v].is_zero() {
                    let c = counts.entry(o.clone()).or_insert(ExtNat::ZERO);
                    *c = *c + count[v];
                }
            }
        }
        PlayCountTable { counts, infinite_ok: self.all_infinite_plays_winning() }
    }

    pub(super) fn value(&self, interp: &Interpretation, scissor: Option<&Value>) -> Result<Value> {
        let carrier = interp.carrier();
        let table = self.play_counts();
        if !table.infinite_ok {
            return Ok(carrier.zero());
        }
        let mut factors = Vec::with_capacity(table.counts.len());
        for (o, c) in table.counts {
            let v = match &o {
                Outcome::Literal(l) => interp.value(l)?.clone(),
                Outcome::Equality(b) => carrier.from_bool(*b),
                Outcome::Scissor => scissor.cloned().unwrap_or_else(|| carrier.zero()),
            };
            factors.push((v, c));
        }
        carrier.counted_product(&factors)
    }
}
