use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{validate_weights, Atom, Context, JointMeasure, OutcomeTuple, Signature};
use crate::rational::Rational;

/// A probability measure q over Ψ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalModel {
    signature: Signature,
    weights: BTreeMap<(Context, OutcomeTuple), Rational>,
    comment: Option<String>,
}

impl EmpiricalModel {
    /// Builds a model from joint weights q(outcome, context). Zero weights
    /// are dropped; the rest must be nonnegative and sum to exactly 1.
    pub fn new(
        signature: Signature,
        weights: impl IntoIterator<Item = ((Context, OutcomeTuple), Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((c, o), w) in weights {
            if !signature.context_in_range(&c) || !signature.outcome_in_range(&o) {
                return Err(Error::Arity {
                    expected: signature.len(),
                    found: c.0.len().max(o.0.len()),
                });
            }
            let at = format!(
                "({} | {})",
                signature.describe_outcomes(&o),
                signature.describe_context(&c)
            );
            if map.insert((c, o), w).is_some() {
                return Err(Error::DuplicateEntry(at));
            }
        }
        validate_weights(map.iter().map(|((c, o), w)| {
            (
                format!(
                    "({} | {})",
                    signature.describe_outcomes(o),
                    signature.describe_context(c)
                ),
                w,
            )
        }))?;
        map.retain(|_, w| !w.is_zero());
        Ok(EmpiricalModel {
            signature,
            weights: map,
            comment: None,
        })
    }

    /// Builds q from a context prior and per-context conditional
    /// distributions: q(o, c) = mass(c) · cond(o | c).
    pub fn from_conditionals(
        signature: Signature,
        contexts: impl IntoIterator<Item = (Context, Rational, Vec<(OutcomeTuple, Rational)>)>,
    ) -> Result<Self> {
        let mut weights = Vec::new();
        for (c, mass, dist) in contexts {
            for (o, p) in dist {
                weights.push(((c.clone(), o), &mass * &p));
            }
        }
        EmpiricalModel::new(signature, weights)
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn weights(&self) -> &BTreeMap<(Context, OutcomeTuple), Rational> {
        &self.weights
    }

    pub fn weight(&self, c: &Context, o: &OutcomeTuple) -> Rational {
        self.weights
            .get(&(c.clone(), o.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// q(context).
    pub fn context_mass(&self, c: &Context) -> Rational {
        self.weights
            .range((c.clone(), OutcomeTuple(vec![]))..)
            .take_while(|((cc, _), _)| cc == c)
            .map(|(_, w)| w)
            .sum()
    }

    /// Non-null contexts in lexicographic order.
    pub fn support_contexts(&self) -> Vec<Context> {
        let mut out: Vec<Context> = self.weights.keys().map(|(c, _)| c.clone()).collect();
        out.dedup();
        out
    }
}

impl JointMeasure for EmpiricalModel {
    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn lambda_labels(&self) -> Option<&[String]> {
        None
    }

    fn atoms(&self) -> Box<dyn Iterator<Item = Atom<'_>> + '_> {
        Box::new(self.weights.iter().map(|((c, o), w)| (c, o, None, w)))
    }
}
