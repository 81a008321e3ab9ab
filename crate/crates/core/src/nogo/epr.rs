use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::construct_sv;
use crate::model::{
    equivalent_empirical, Context, EmpiricalModel, Event, HiddenVariableModel, JointMeasure,
    OutcomeTuple, Point, PropertyVerdict, Signature, Site,
};
use crate::properties::{
    check_lambda_independence, check_outcome_independence, check_strong_determinism,
};
use crate::rational::{frac, Rational};

fn epr_signature() -> Signature {
    Signature::new(vec![
        Site::new("Ann", ["A"], ["+", "-"]).expect("valid site"),
        Site::new("Bob", ["B"], ["+", "-"]).expect("valid site"),
    ])
    .expect("valid signature")
}

/// One context (A, B); the outcomes are perfectly anti-correlated, each
/// way round with probability 1/2.
pub fn epr_model() -> EmpiricalModel {
    let c = Context(vec![0, 0]);
    EmpiricalModel::new(
        epr_signature(),
        [
            ((c.clone(), OutcomeTuple(vec![0, 1])), frac(1, 2)),
            ((c, OutcomeTuple(vec![1, 0])), frac(1, 2)),
        ],
    )
    .expect("valid model")
}

/// Two hidden-variable values of probability 1/2 each; λ1 fixes (+, -) and
/// λ2 fixes (-, +).
pub fn epr_escape_model() -> HiddenVariableModel {
    let c = Context(vec![0, 0]);
    let point = |o: [usize; 2], lambda| Point {
        context: c.clone(),
        outcome: OutcomeTuple(o.to_vec()),
        lambda,
    };
    HiddenVariableModel::new(
        epr_signature(),
        vec!["λ1".into(), "λ2".into()],
        [
            (point([0, 1], 0), frac(1, 2)),
            (point([1, 0], 1), frac(1, 2)),
        ],
    )
    .expect("valid model")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EprReport {
    /// p(+_a | A, B, λ) in the single-valued completion.
    pub marginal: Rational,
    /// p(+_a | A, B, -_b, λ) in the single-valued completion.
    pub conditioned: Rational,
    pub outcome_independence: PropertyVerdict,
    pub escape_strong_determinism: PropertyVerdict,
    pub escape_lambda_independence: PropertyVerdict,
    pub escape_outcome_independence: PropertyVerdict,
    pub escape_equivalence: PropertyVerdict,
    /// Single-valued completion violates Outcome Independence, and the
    /// two-λ model escapes once Single-Valuedness is dropped.
    pub confirmed: bool,
}

pub fn verify_epr() -> EprReport {
    let e = epr_model();
    let h = construct_sv(&e);
    let given = Event::new().context(&["A", "B"]).lambda("λ");
    let target = Event::new().outcome("Ann", "+");
    let marginal = h.cond_prob(&target, &given).expect("non-null");
    let conditioned = h
        .cond_prob(&target, &given.clone().outcome("Bob", "-"))
        .expect("non-null");
    let outcome_independence = check_outcome_independence(&h);

    let escape = epr_escape_model();
    let escape_strong_determinism = check_strong_determinism(&escape);
    let escape_lambda_independence = check_lambda_independence(&escape);
    let escape_outcome_independence = check_outcome_independence(&escape);
    let escape_equivalence = equivalent_empirical(&e, &escape).expect("same signature");

    let confirmed = marginal != conditioned
        && !outcome_independence.holds
        && escape_strong_determinism.holds
        && escape_lambda_independence.holds
        && escape_outcome_independence.holds
        && escape_equivalence.holds;
    EprReport {
        marginal,
        conditioned,
        outcome_independence,
        escape_strong_determinism,
        escape_lambda_independence,
        escape_outcome_independence,
        escape_equivalence,
        confirmed,
    }
}

impl fmt::Display for EprReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "EPR: single-valued completion of the anti-correlated model"
        )?;
        writeln!(f, "  p(Ann=+ | A, B, λ)          = {}", self.marginal)?;
        writeln!(f, "  p(Ann=+ | A, B, Bob=-, λ)   = {}", self.conditioned)?;
        writeln!(f, "  outcome independence: {}", self.outcome_independence)?;
        writeln!(f, "two-λ escape model:")?;
        writeln!(
            f,
            "  strong determinism:   {}",
            self.escape_strong_determinism
        )?;
        writeln!(
            f,
            "  λ-independence:       {}",
            self.escape_lambda_independence
        )?;
        writeln!(
            f,
            "  outcome independence: {}",
            self.escape_outcome_independence
        )?;
        writeln!(f, "  equivalence:          {}", self.escape_equivalence)?;
        write!(
            f,
            "verdict: {}",
            if self.confirmed {
                "no equivalent model is single-valued and outcome independent"
            } else {
                "NOT CONFIRMED"
            }
        )
    }
}
