//! Seeded randomized property suites.
//!
//! Each suite draws its cases from a ChaCha stream seeded by
//! [`CheckConfig::seed`] and the suite name, so individual suites are
//! reproducible in isolation. A case either passes, fails with a message,
//! or is skipped (for instance when a game has too many strategies to
//! enumerate); skipped draws do not count towards the case budget.

pub mod gen;
mod suites;

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;

use crate::error::Result;

pub use suites::check_problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    /// Checked (non-skipped) cases per suite.
    pub cases: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0x5eed, cases: 200 }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} skipped, {} failures, {:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.skipped,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

pub(crate) enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

/// Runs `case` until `cases` draws were checked. Draws are capped at twenty
/// times the budget; falling short of the budget is reported as a failure.
pub(crate) fn run_cases<F>(name: &'static str, cfg: &CheckConfig, mut case: F) -> SuiteReport
where
    F: FnMut(&mut gen::Rng8) -> Result<Outcome>,
{
    let start = Instant::now();
    let mut rng = gen::Rng8::seed_from_u64(cfg.seed ^ fnv(name));
    let mut report = SuiteReport { name, cases: 0, skipped: 0, failures: Vec::new(), elapsed: Duration::ZERO };
    let mut draws = 0;
    while report.cases < cfg.cases && draws < cfg.cases.saturating_mul(20) {
        draws += 1;
        match case(&mut rng) {
            Ok(Outcome::Pass) => report.cases += 1,
            Ok(Outcome::Skip) => report.skipped += 1,
            Ok(Outcome::Fail(msg)) => {
                report.cases += 1;
                report.failures.push(format!("draw {draws}: {msg}"));
            }
            Err(e) => {
                report.cases += 1;
                report.failures.push(format!("draw {draws}: error {e}"));
            }
        }
    }
    if report.cases < cfg.cases {
        report.failures.push(format!("only {} of {} cases could be checked", report.cases, cfg.cases));
    }
    report.elapsed = start.elapsed();
    report
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// The names of all suites, in run order.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

type Suite = fn(&CheckConfig) -> SuiteReport;

const SUITES: &[(&str, Suite)] = &[
    ("semiring-axioms", suites::semiring_axioms),
    ("absorption", suites::absorption),
    ("infinitary-power", suites::infinitary_power),
    ("counted-products", suites::counted_products),
    ("antichains", suites::antichains),
    ("splitting", suites::splitting),
    ("fundamental-property", suites::fundamental_property),
    ("truth-preservation", suites::truth_preservation),
    ("monotonicity", suites::monotonicity),
    ("strategy-sup", suites::strategy_sup),
    ("boolean-game", suites::boolean_game),
    ("nnf-equivalence", suites::nnf_equivalence),
    ("gfp-widening", suites::gfp_widening),
];

pub fn run_suite(name: &str, cfg: &CheckConfig) -> Option<SuiteReport> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, run)| run(cfg))
}

pub fn run_all(cfg: &CheckConfig) -> Vec<SuiteReport> {
    SUITES.iter().map(|(_, run)| run(cfg)).collect()
}

#[cfg(test)]
mod tests;
