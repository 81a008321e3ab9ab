use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::signature::unique;
use crate::model::{
    validate_weights, Atom, Context, EmpiricalModel, JointMeasure, OutcomeTuple, Signature, Slice,
};
use crate::rational::Rational;

/// A point of Ω = Ψ × Λ. Field order gives the (context, outcome, λ)
/// iteration order used for witnesses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub context: Context,
    pub outcome: OutcomeTuple,
    pub lambda: usize,
}

/// A probability measure p over Ψ × Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiddenVariableModel {
    signature: Signature,
    lambdas: Vec<String>,
    weights: BTreeMap<Point, Rational>,
    comment: Option<String>,
}

impl HiddenVariableModel {
    pub fn new(
        signature: Signature,
        lambdas: Vec<String>,
        weights: impl IntoIterator<Item = (Point, Rational)>,
    ) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::LambdaMismatch(
                "a hidden-variable model needs at least one λ value".into(),
            ));
        }
        unique("hidden-variable", &lambdas)?;
        let mut map = BTreeMap::new();
        for (pt, w) in weights {
            if !signature.context_in_range(&pt.context) || !signature.outcome_in_range(&pt.outcome)
            {
                return Err(Error::Arity {
                    expected: signature.len(),
                    found: pt.context.0.len().max(pt.outcome.0.len()),
                });
            }
            if pt.lambda >= lambdas.len() {
                return Err(Error::UnknownLabel {
                    kind: "hidden-variable",
                    label: format!("#{}", pt.lambda),
                });
            }
            let at = describe_point(&signature, &lambdas, &pt);
            if map.insert(pt, w).is_some() {
                return Err(Error::DuplicateEntry(at));
            }
        }
        validate_weights(
            map.iter()
                .map(|(pt, w)| (describe_point(&signature, &lambdas, pt), w)),
        )?;
        map.retain(|_, w| !w.is_zero());
        Ok(HiddenVariableModel {
            signature,
            lambdas,
            weights: map,
            comment: None,
        })
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn lambdas(&self) -> &[String] {
        &self.lambdas
    }

    pub fn weights(&self) -> &BTreeMap<Point, Rational> {
        &self.weights
    }

    /// Slices per non-null (context, λ) cell.
    pub fn cell_slices(&self) -> BTreeMap<(Context, usize), Slice> {
        let mut out: BTreeMap<(Context, usize), Slice> = BTreeMap::new();
        for (pt, w) in &self.weights {
            out.entry((pt.context.clone(), pt.lambda))
                .or_default()
                .add(&pt.outcome, w);
        }
        out
    }

    /// p(λ) for every declared λ.
    pub fn lambda_masses(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.lambdas.len()];
        for (pt, w) in &self.weights {
            out[pt.lambda] += w;
        }
        out
    }
}

pub(crate) fn describe_point(sig: &Signature, lambdas: &[String], pt: &Point) -> String {
    format!(
        "({} | {}, λ={})",
        sig.describe_outcomes(&pt.outcome),
        sig.describe_context(&pt.context),
        lambdas[pt.lambda]
    )
}

impl JointMeasure for HiddenVariableModel {
    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn lambda_labels(&self) -> Option<&[String]> {
        Some(&self.lambdas)
    }

    fn atoms(&self) -> Box<dyn Iterator<Item = Atom<'_>> + '_> {
        Box::new(
            self.weights
                .iter()
                .map(|(pt, w)| (&pt.context, &pt.outcome, Some(pt.lambda), w)),
        )
    }
}

/// Sums λ out: q(o, c) = Σ_λ p(o, c, λ).
pub fn project_to_empirical(h: &HiddenVariableModel) -> EmpiricalModel {
    let mut q: BTreeMap<(Context, OutcomeTuple), Rational> = BTreeMap::new();
    for (pt, w) in &h.weights {
        *q.entry((pt.context.clone(), pt.outcome.clone()))
            .or_insert_with(Rational::zero) += w;
    }
    EmpiricalModel::new(h.signature.clone(), q).expect("projection of a valid measure is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Event;
    use crate::rational::frac;

    fn two_lambda() -> HiddenVariableModel {
        let sig = Signature::homogeneous(&["S"], &["M"], &["h", "t"]).unwrap();
        let pt = |o, l| Point {
            context: Context(vec![0]),
            outcome: OutcomeTuple(vec![o]),
            lambda: l,
        };
        HiddenVariableModel::new(
            sig,
            vec!["x".into(), "y".into()],
            vec![(pt(0, 0), frac(1, 4)), (pt(1, 1), frac(3, 4))],
        )
        .unwrap()
    }

    #[test]
    fn lambda_slot_events() {
        let h = two_lambda();
        let p = h
            .cond_prob(&Event::new().outcome("S", "t"), &Event::new().lambda("y"))
            .unwrap();
        assert_eq!(p, Rational::one());
        assert_eq!(h.event_prob(&Event::new().lambda("x")).unwrap(), frac(1, 4));
        assert_eq!(h.lambda_masses(), vec![frac(1, 4), frac(3, 4)]);
    }

    #[test]
    fn projection_sums_out_lambda() {
        let q = project_to_empirical(&two_lambda());
        assert_eq!(
            q.weight(&Context(vec![0]), &OutcomeTuple(vec![1])),
            frac(3, 4)
        );
    }

    #[test]
    fn rejects_empty_or_duplicate_lambda_sets() {
        let sig = Signature::homogeneous(&["S"], &["M"], &["h"]).unwrap();
        assert!(HiddenVariableModel::new(sig.clone(), vec![], vec![]).is_err());
        assert!(matches!(
            HiddenVariableModel::new(sig, vec!["a".into(), "a".into()], vec![]),
            Err(Error::DuplicateLabel { .. })
        ));
    }
}
