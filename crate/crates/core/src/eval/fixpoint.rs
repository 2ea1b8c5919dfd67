use std::fmt::Write as _;

use super::EvalConfig;
use crate::error::{Error, Result};
use crate::logic::{FixKind, Universe};
use crate::semiring::{Carrier, Value};

/// An interpretation `g: A^r → K` of a fixed-point relation, stored
/// row-major over the universe order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTable {
    relation: String,
    arity: usize,
    universe_len: usize,
    entries: Vec<Value>,
}

impl ValuationTable {
    pub fn constant(relation: &str, arity: usize, universe_len: usize, value: Value) -> ValuationTable {
        let n = universe_len.pow(arity as u32);
        ValuationTable { relation: relation.into(), arity, universe_len, entries: vec![value; n] }
    }

    /// Builds a table from entries in row-major order.
    pub fn from_entries(relation: &str, arity: usize, universe_len: usize, entries: Vec<Value>) -> ValuationTable {
        assert_eq!(entries.len(), universe_len.pow(arity as u32), "table size");
        ValuationTable { relation: relation.into(), arity, universe_len, entries }
    }

    pub fn relation(&self) -> &str {
        &self.relation
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe_len(&self) -> usize {
        self.universe_len
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &e| acc * self.universe_len + e)
    }

    pub fn get(&self, tuple: &[usize]) -> &Value {
        &self.entries[self.index(tuple)]
    }

    /// Pointwise natural order.
    pub fn leq(&self, other: &ValuationTable) -> Result<bool> {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.natural_leq(b)? {
                return Ok(false);
            }
        }
        Ok(self.entries.len() == other.entries.len())
    }

    /// Widens every polynomial entry at `threshold`; other carriers pass through.
    pub fn widen(&self, threshold: u32) -> ValuationTable {
        let entries = self
            .entries
            .iter()
            .map(|v| match v {
                Value::Sorp(p) => Value::Sorp(p.widen(threshold)),
                Value::SorpDual(p) => Value::SorpDual(p.widen(threshold)),
                other => other.clone(),
            })
            .collect();
        ValuationTable { entries, ..self.clone() }
    }

    /// One line per tuple: `R(u,v) = value`.
    pub fn render(&self, universe: &Universe) -> String {
        let mut out = String::new();
        for (i, v) in self.entries.iter().enumerate() {
            let _ = writeln!(out, "{}({}) = {v}", self.relation, universe.fmt_tuple(&universe.tuple(self.arity, i)));
        }
        out
    }
}

/// Outcome of one fixed-point computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointReport {
    pub kind: FixKind,
    pub steps: usize,
    /// The widening threshold that produced the accepted candidate, if any.
    pub widening_threshold: Option<u32>,
    /// `F(table) = table` was checked exactly.
    pub verified: bool,
    pub table: ValuationTable,
}

impl FixpointReport {
    pub fn render(&self, universe: &Universe) -> String {
        let mut out = format!(
            "{} {}: steps={} threshold={} verified={}\n",
            self.kind.keyword(),
            self.table.relation(),
            self.steps,
            self.widening_threshold.map_or("none".to_string(), |b| b.to_string()),
            self.verified
        );
        out.push_str(&self.table.render(universe));
        out
    }
}

/// Kleene iteration from the all-zero table until `F(g) = g` holds exactly.
pub fn lfp_iterate<F>(
    mut f: F,
    relation: &str,
    arity: usize,
    universe_len: usize,
    carrier: &Carrier,
    cfg: &EvalConfig,
) -> Result<FixpointReport>
where
    F: FnMut(&ValuationTable) -> Result<ValuationTable>,
{
    let mut g = ValuationTable::constant(relation, arity, universe_len, carrier.zero());
    let mut steps = 0;
    loop {
        let next = f(&g)?;
        steps += 1;
        if next == g {
            return Ok(FixpointReport {
                kind: FixKind::Lfp,
                steps,
                widening_threshold: None,
                verified: true,
                table: g,
            });
        }
        if steps >= cfg.step_cap {
            return Err(Error::IterationDiverged { steps });
        }
        g = next;
    }
}

/// Greatest fixed point below `top`.
///
/// Polynomial carriers iterate `g ↦ widen(F(g), B)` from `top` until the
/// sequence stabilizes at a candidate `c`, then accept `c` only if
/// `F(c) = c` holds exactly and the same candidate comes out at threshold
/// `2B`. Otherwise `B` doubles, up to `cfg.widen_bmax`. Other carriers run a
/// plain descending iteration under the step cap.
pub fn gfp_iterate_widened<F>(
    mut f: F,
    relation: &str,
    arity: usize,
    universe_len: usize,
    top: &Value,
    cfg: &EvalConfig,
) -> Result<FixpointReport>
where
    F: FnMut(&ValuationTable) -> Result<ValuationTable>,
{
    let carrier = top.carrier();
    let caps = carrier.caps();
    if !(caps.finite_carrier || (caps.absorptive && caps.fully_continuous)) {
        return Err(Error::GfpUnsupportedCarrier(carrier.to_string()));
    }
    let start = ValuationTable::constant(relation, arity, universe_len, top.clone());
    if !matches!(carrier, Carrier::Sorp | Carrier::SorpDual) {
        let mut g = start;
        let mut steps = 0;
        loop {
            let next = f(&g)?;
            steps += 1;
            if next == g {
                return Ok(FixpointReport {
                    kind: FixKind::Gfp,
                    steps,
                    widening_threshold: None,
                    verified: true,
                    table: g,
                });
            }
            if steps >= cfg.step_cap {
                return Err(Error::IterationDiverged { steps });
            }
            g = next;
        }
    }
    let mut b = cfg.widen_b0.max(1);
    while b <= cfg.widen_bmax {
        let (candidate, steps) = widened_descent(&mut f, &start, b, cfg)?;
        if f(&candidate)? == candidate {
            let (again, _) = widened_descent(&mut f, &start, b.saturating_mul(2), cfg)?;
            if again == candidate {
                return Ok(FixpointReport {
                    kind: FixKind::Gfp,
                    steps,
                    widening_threshold: Some(b),
                    verified: true,
                    table: candidate,
                });
            }
        }
        log::debug!("gfp candidate for {relation} rejected at threshold {b}");
        b = b.saturating_mul(2);
    }
    Err(Error::WideningDiverged { bmax: cfg.widen_bmax })
}

/// The stable point of `g ↦ widen(F(g), threshold)` from the constant
/// table `top`, and the number of steps taken. This is the candidate that
/// [`gfp_iterate_widened`] verifies.
pub fn gfp_widened_candidate<F>(
    mut f: F,
    relation: &str,
    arity: usize,
    universe_len: usize,
    top: &Value,
    threshold: u32,
    cfg: &EvalConfig,
) -> Result<(ValuationTable, usize)>
where
    F: FnMut(&ValuationTable) -> Result<ValuationTable>,
{
    let start = ValuationTable::constant(relation, arity, universe_len, top.clone());
    widened_descent(&mut f, &start, threshold.max(1), cfg)
}

fn widened_descent<F>(
    f: &mut F,
    start: &ValuationTable,
    threshold: u32,
    cfg: &EvalConfig,
) -> Result<(ValuationTable, usize)>
where
    F: FnMut(&ValuationTable) -> Result<ValuationTable>,
{
    let mut g = start.clone();
    let mut steps = 0;
    loop {
        let next = f(&g)?.widen(threshold);
        steps += 1;
        if next == g {
            return Ok((g, steps));
        }
        if steps >= cfg.step_cap {
            return Err(Error::IterationDiverged { steps });
        }
        g = next;
    }
}
