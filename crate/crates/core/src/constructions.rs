//! Completions of an empirical model to an equivalent hidden-variable model.
//!
//! * [`construct_e1`]: Λ = Ψ, strongly deterministic.
//! * [`construct_e2`]: Λ uniform on L points, weakly deterministic and
//!   λ-independent.
//! * [`construct_sv`]: Λ a singleton.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    project_to_empirical, EmpiricalModel, HiddenVariableModel, JointMeasure, Point,
};
use crate::properties::PropertyId;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstructionMethod {
    #[serde(rename = "e1")]
    E1StrongDeterministic,
    #[serde(rename = "e2")]
    E2WeakDetLambdaIndep,
    #[serde(rename = "sv")]
    SvSingleValued,
}

impl ConstructionMethod {
    pub const ALL: [ConstructionMethod; 3] = [
        ConstructionMethod::E1StrongDeterministic,
        ConstructionMethod::E2WeakDetLambdaIndep,
        ConstructionMethod::SvSingleValued,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionMethod::E1StrongDeterministic => "e1",
            ConstructionMethod::E2WeakDetLambdaIndep => "e2",
            ConstructionMethod::SvSingleValued => "sv",
        }
    }

    /// The properties every output of this construction satisfies, closed
    /// under the implication rules.
    pub fn guarantees(self) -> &'static [PropertyId] {
        use PropertyId::*;
        match self {
            ConstructionMethod::E1StrongDeterministic => &[
                StrongDeterminism,
                WeakDeterminism,
                OutcomeIndependence,
                ParameterIndependence,
            ],
            ConstructionMethod::E2WeakDetLambdaIndep => {
                &[LambdaIndependence, WeakDeterminism, OutcomeIndependence]
            }
            ConstructionMethod::SvSingleValued => &[SingleValuedness, LambdaIndependence],
        }
    }

    pub fn construct(self, e: &EmpiricalModel) -> HiddenVariableModel {
        match self {
            ConstructionMethod::E1StrongDeterministic => construct_e1(e),
            ConstructionMethod::E2WeakDetLambdaIndep => construct_e2(e),
            ConstructionMethod::SvSingleValued => construct_sv(e),
        }
    }
}

impl fmt::Display for ConstructionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_uppercase())
    }
}

impl FromStr for ConstructionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown construction method `{s}`")))
    }
}

/// Λ is the whole of Ψ. The weight q(o, C) moves to the single point
/// (o, C, λ = (o, C)), so λ fixes every outcome. Λ lists the points of Ψ
/// in (outcome, measurement) order, labelled `(o1,o2,…,M1,M2,…)`.
pub fn construct_e1(e: &EmpiricalModel) -> HiddenVariableModel {
    let sig = e.signature();
    let contexts: Vec<_> = sig.contexts().collect();
    let mut labels = Vec::new();
    for o in sig.outcome_tuples() {
        for c in &contexts {
            let mut parts = sig.outcome_labels(&o);
            parts.extend(sig.context_labels(c));
            labels.push(format!("({})", parts.join(",")));
        }
    }
    if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        labels = (0..labels.len()).map(|i| format!("psi{i}")).collect();
    }
    let index = |o: usize, c: usize| o * contexts.len() + c;
    let outcome_pos = |o: &crate::model::OutcomeTuple| mixed_radix(&o.0, &sig.outcome_radices());
    let context_pos = |c: &crate::model::Context| mixed_radix(&c.0, &sig.measurement_radices());

    let weights = e.weights().iter().map(|((c, o), w)| {
        (
            Point {
                context: c.clone(),
                outcome: o.clone(),
                lambda: index(outcome_pos(o), context_pos(c)),
            },
            w.clone(),
        )
    });
    HiddenVariableModel::new(sig.clone(), labels, weights).expect("valid by construction")
}

fn mixed_radix(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

/// The number of λ points used by [`construct_e2`]: the least common
/// multiple of the denominators of all conditionals q(o | C), C non-null.
pub fn e2_lambda_size(e: &EmpiricalModel) -> BigInt {
    e.context_slices()
        .values()
        .flat_map(|s| {
            s.weights
                .keys()
                .map(|o| s.conditional(o))
                .collect::<Vec<_>>()
        })
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Λ = {0, …, L−1} with L from [`e2_lambda_size`]; p(C, λ) = q(C)/L. For
/// each non-null context, consecutive blocks of λ of size q(o | C)·L are
/// assigned to outcome tuples in order, and λ fixes the whole tuple.
///
/// Panics if L does not fit in memory; callers guard with
/// [`e2_lambda_size`] first.
pub fn construct_e2(e: &EmpiricalModel) -> HiddenVariableModel {
    let sig = e.signature();
    let size = e2_lambda_size(e);
    let l = size.to_usize().expect("λ set size fits in usize");
    let lsize = Rational::from(l as i64);
    let mut weights = Vec::new();
    for (c, slice) in e.context_slices() {
        let share = &slice.mass / &lsize;
        let mut next = 0usize;
        for o in slice.weights.keys() {
            let block = (slice.conditional(o) * &lsize)
                .numer()
                .to_usize()
                .expect("block size is an integer below L");
            for lambda in next..next + block {
                weights.push((
                    Point {
                        context: c.clone(),
                        outcome: o.clone(),
                        lambda,
                    },
                    share.clone(),
                ));
            }
            next += block;
        }
        debug_assert_eq!(next, l);
    }
    let labels = (0..l).map(|i| i.to_string()).collect();
    HiddenVariableModel::new(sig.clone(), labels, weights)
        .expect("valid by construction")
        .with_comment(
            "E2 completion: p(context) = q(context), λ uniform and independent of the context",
        )
}

/// Λ = {λ}; the weights are copied unchanged.
pub fn construct_sv(e: &EmpiricalModel) -> HiddenVariableModel {
    let weights = e.weights().iter().map(|((c, o), w)| {
        (
            Point {
                context: c.clone(),
                outcome: o.clone(),
                lambda: 0,
            },
            w.clone(),
        )
    });
    HiddenVariableModel::new(e.signature().clone(), vec!["λ".into()], weights)
        .expect("valid by construction")
}

/// Rebuilds a hidden-variable model from its observable content.
pub fn reconstruct_hvm(h: &HiddenVariableModel, method: ConstructionMethod) -> HiddenVariableModel {
    method.construct(&project_to_empirical(h))
}
