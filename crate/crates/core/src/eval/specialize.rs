use std::collections::BTreeMap;

use super::{EvalConfig, Evaluator};
use crate::error::{Error, Result};
use crate::logic::{Formula, Interpretation};
use crate::semiring::{Carrier, TokenSets, Value};
use crate::sorp::eval_hom;
use crate::token::Token;

/// Values assigned to provenance tokens.
pub type Assignment = BTreeMap<Token, Value>;

/// Applies the evaluation homomorphism determined by `assignment` to a
/// polynomial value.
pub fn specialize(value: &Value, assignment: &Assignment, target: &Carrier) -> Result<Value> {
    let poly = value
        .as_sorp()
        .ok_or_else(|| Error::CarrierMismatch { left: "sorp".into(), right: value.carrier().to_string() })?;
    eval_hom(poly, assignment, target)
}

/// Maps every token to itself in `PosBool`.
pub fn identity_assignment<'t, I>(tokens: I, target: &Carrier) -> Result<Assignment>
where
    I: IntoIterator<Item = &'t Token>,
{
    if *target != Carrier::PosBool {
        return Err(Error::InvalidValue {
            carrier: target.to_string(),
            text: "identity".into(),
            reason: "the identity assignment exists only for posbool".into(),
        });
    }
    Ok(tokens.into_iter().map(|t| (t.clone(), Value::PosBool(TokenSets::token(t.clone())))).collect())
}

fn require_compatible(interp: &Interpretation) -> Result<()> {
    if interp.is_model_compatible() {
        Ok(())
    } else {
        Err(Error::NotModelCompatible("atoms must carry fresh token pairs or 0/1".into()))
    }
}

/// Some model compatible with `π` satisfies `f`, decided as `π⟦f⟧ ≠ 0`.
pub fn satisfiable_mod_pi(f: &Formula, interp: &Interpretation, cfg: &EvalConfig) -> Result<bool> {
    require_compatible(interp)?;
    Ok(!Evaluator::new(interp, cfg.clone()).evaluate(f)?.is_zero())
}

/// Every model compatible with `π` satisfies `f`, decided as `π⟦¬f⟧ = 0`.
pub fn valid_mod_pi(f: &Formula, interp: &Interpretation, cfg: &EvalConfig) -> Result<bool> {
    require_compatible(interp)?;
    let negated = Formula::not(f.clone());
    Ok(Evaluator::new(interp, cfg.clone()).evaluate(&negated)?.is_zero())
}
