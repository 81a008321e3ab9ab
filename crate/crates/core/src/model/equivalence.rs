use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{
    Context, EmpiricalModel, HiddenVariableModel, JointMeasure, PropertyVerdict, Signature, Slice,
};

/// Empirical equivalence of q and p: the same non-null contexts, and equal
/// conditional outcome distributions on each of them. The witness is the
/// first mismatch in (context, outcome) order; `lhs` is the empirical value.
pub fn equivalent_empirical(
    e: &EmpiricalModel,
    h: &HiddenVariableModel,
) -> Result<PropertyVerdict> {
    same_signature(e.signature(), h.signature())?;
    Ok(compare_slices(
        e.signature(),
        &e.context_slices(),
        &h.context_slices(),
    ))
}

/// Equivalence of two hidden-variable models over the same sites; their
/// Λ sets may differ.
pub fn equivalent_hvm(
    h1: &HiddenVariableModel,
    h2: &HiddenVariableModel,
) -> Result<PropertyVerdict> {
    same_signature(h1.signature(), h2.signature())?;
    Ok(compare_slices(
        h1.signature(),
        &h1.context_slices(),
        &h2.context_slices(),
    ))
}

fn same_signature(a: &Signature, b: &Signature) -> Result<()> {
    if a != b {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

pub(crate) fn compare_slices(
    sig: &Signature,
    left: &BTreeMap<Context, Slice>,
    right: &BTreeMap<Context, Slice>,
) -> PropertyVerdict {
    let contexts: BTreeSet<&Context> = left.keys().chain(right.keys()).collect();
    for c in contexts {
        let (l, r) = match (left.get(c), right.get(c)) {
            (Some(l), Some(r)) => (l, r),
            (l, r) => {
                let mass = |s: Option<&Slice>| s.map(|s| s.mass.clone()).unwrap_or_default();
                return PropertyVerdict::fails(
                    format!("non-null context mismatch at ({})", sig.describe_context(c)),
                    mass(l),
                    mass(r),
                );
            }
        };
        let outcomes: BTreeSet<_> = l.weights.keys().chain(r.weights.keys()).collect();
        for o in outcomes {
            let (pl, pr) = (l.conditional(o), r.conditional(o));
            if pl != pr {
                return PropertyVerdict::fails(
                    format!(
                        "p({} | {})",
                        sig.describe_outcomes(o),
                        sig.describe_context(c)
                    ),
                    pl,
                    pr,
                );
            }
        }
    }
    PropertyVerdict::holds()
}
