//! Provenance semantics for full fixed-point logic.
//!
//! Formulas of LFP are evaluated over finite universes to values in
//! commutative semirings. The most informative target is the semiring of
//! generalized absorptive polynomials ([`SorpPoly`]), whose values describe the
//! absorption-dominant evaluation strategies of the formula; every other
//! absorptive, fully continuous semiring is reached from it by an evaluation
//! homomorphism ([`sorp::eval_hom`]).
//!
//! The [`game`] module builds the parity model-checking game of a formula and
//! values positional Verifier strategies, which gives an independent route to
//! the same provenance values.

pub mod check;
pub mod error;
pub mod eval;
pub mod extnat;
pub mod game;
pub mod logic;
pub mod problem;
pub mod semiring;
pub mod sorp;
pub mod syntax;
pub mod token;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
pub use eval::{evaluate, EvalConfig, Evaluator, FixpointReport, ValuationTable};
pub use extnat::ExtNat;
pub use game::{Game, PositionalStrategy};
pub use logic::{Formula, GroundLiteral, Interpretation, Structure, Term, Universe, Vocabulary};
pub use semiring::{Carrier, SemiringCaps, Value};
pub use sorp::{Monomial, SorpPoly};
pub use token::Token;
