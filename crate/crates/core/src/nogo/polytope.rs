//! Membership of an empirical behaviour in the local polytope: the convex
//! hull of the behaviours of deterministic per-site response functions.
//!
//! A λ-independent local model can always be rewritten with λ ranging over
//! deterministic strategies, so deciding this linear system decides whether
//! such a model exists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, LpOutcome};
use crate::model::{
    Context, EmpiricalModel, HiddenVariableModel, JointMeasure, Odometer, OutcomeTuple, Point,
    Signature,
};
use crate::rational::Rational;

pub const DEFAULT_GUARD: u64 = 1_000_000;

/// `responses[s][m]` is the outcome site `s` returns for measurement `m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeterministicStrategy {
    pub responses: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    /// The outcome tuple this strategy produces in a context.
    pub fn outcomes(&self, c: &Context) -> OutcomeTuple {
        OutcomeTuple(
            c.0.iter()
                .zip(&self.responses)
                .map(|(&m, r)| r[m])
                .collect(),
        )
    }

    /// `Ann[A→+] Bob[B→-]`
    pub fn describe(&self, sig: &Signature) -> String {
        sig.sites()
            .iter()
            .enumerate()
            .map(|(s, site)| {
                let parts: Vec<String> = self.responses[s]
                    .iter()
                    .enumerate()
                    .map(|(m, &o)| format!("{}→{}", site.measurements()[m], site.outcomes()[o]))
                    .collect();
                format!("{}[{}]", site.name(), parts.join(" "))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Π_sites |outcomes|^|measurements|, saturating.
pub fn strategy_count(sig: &Signature) -> u128 {
    sig.sites().iter().fold(1u128, |acc, s| {
        let per = (s.outcomes().len() as u128)
            .checked_pow(s.measurements().len() as u32)
            .unwrap_or(u128::MAX);
        acc.saturating_mul(per)
    })
}

/// All strategies in lexicographic order of the flattened response table.
pub fn enumerate_deterministic_strategies(
    sig: &Signature,
    guard: u64,
) -> Result<Vec<DeterministicStrategy>> {
    let count = strategy_count(sig);
    if count > u128::from(guard) {
        return Err(Error::SizeGuard {
            what: "deterministic strategy enumeration",
            count: count.to_string(),
            guard,
        });
    }
    let radices: Vec<usize> = sig
        .sites()
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.outcomes().len(), s.measurements().len()))
        .collect();
    Ok(Odometer::new(radices)
        .map(|flat| {
            let mut rest = flat.as_slice();
            let responses = sig
                .sites()
                .iter()
                .map(|s| {
                    let (head, tail) = rest.split_at(s.measurements().len());
                    rest = tail;
                    head.to_vec()
                })
                .collect();
            DeterministicStrategy { responses }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyWeight {
    pub index: usize,
    pub strategy: DeterministicStrategy,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub strategies: usize,
    /// Descriptions of the equality constraints, in certificate order.
    pub constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<StrategyWeight>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<HiddenVariableModel>,
    /// One entry per constraint, with yᵀA ≥ 0 on every strategy column and
    /// yᵀb < 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Rational>>,
    /// Outcome of [`verify_farkas`] on `certificate`.
    pub certificate_verified: bool,
}

/// The constraint rows: total weight 1, then one row per non-null context
/// and outcome tuple asking that the strategies producing that tuple carry
/// weight q(o | C).
struct System {
    contexts: Vec<Context>,
    outcomes: Vec<OutcomeTuple>,
    b: Vec<Rational>,
    descriptions: Vec<String>,
}

impl System {
    fn new(e: &EmpiricalModel) -> Self {
        let sig = e.signature();
        let slices = e.context_slices();
        let contexts: Vec<Context> = slices.keys().cloned().collect();
        let outcomes: Vec<OutcomeTuple> = sig.outcome_tuples().collect();
        let mut b = vec![Rational::one()];
        let mut descriptions = vec!["Σ w = 1".to_string()];
        for c in &contexts {
            for o in &outcomes {
                b.push(slices[c].conditional(o));
                descriptions.push(format!(
                    "q({} | {})",
                    sig.describe_outcomes(o),
                    sig.describe_context(c)
                ));
            }
        }
        System {
            contexts,
            outcomes,
            b,
            descriptions,
        }
    }

    fn row(&self, ci: usize, o: &OutcomeTuple) -> usize {
        let oi = self
            .outcomes
            .binary_search(o)
            .expect("outcome tuples are sorted");
        1 + ci * self.outcomes.len() + oi
    }

    fn matrix(&self, strategies: &[DeterministicStrategy]) -> Vec<Vec<Rational>> {
        let mut a = vec![vec![Rational::zero(); strategies.len()]; self.b.len()];
        for (j, s) in strategies.iter().enumerate() {
            a[0][j] = Rational::one();
            for (ci, c) in self.contexts.iter().enumerate() {
                a[self.row(ci, &s.outcomes(c))][j] = Rational::one();
            }
        }
        a
    }
}

/// Decides exactly whether the conditional behaviour of `e` on its
/// non-null contexts is a mixture of deterministic strategies.
pub fn local_polytope_feasibility(e: &EmpiricalModel, guard: u64) -> Result<FeasibilityResult> {
    let sig = e.signature();
    let strategies = enumerate_deterministic_strategies(sig, guard)?;
    let system = System::new(e);
    let a = system.matrix(&strategies);
    let mut result = FeasibilityResult {
        feasible: false,
        strategies: strategies.len(),
        constraints: system.descriptions.clone(),
        weights: None,
        witness: None,
        certificate: None,
        certificate_verified: false,
    };
    match solve_feasibility(&a, &system.b) {
        LpOutcome::Feasible(x) => {
            let weights: Vec<StrategyWeight> = x
                .into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(index, weight)| StrategyWeight {
                    index,
                    strategy: strategies[index].clone(),
                    weight,
                })
                .collect();
            result.feasible = true;
            result.witness = Some(witness_model(e, &weights));
            result.weights = Some(weights);
        }
        LpOutcome::Infeasible(y) => {
            result.certificate_verified = verify_farkas(e, &strategies, &y);
            result.certificate = Some(y);
        }
    }
    Ok(result)
}

/// Λ = the strategies in the mixture; p(C, o, s) = q(C) · w_s · [s(C) = o].
fn witness_model(e: &EmpiricalModel, weights: &[StrategyWeight]) -> HiddenVariableModel {
    let slices = e.context_slices();
    let labels = weights.iter().map(|w| format!("s{}", w.index)).collect();
    let mut points = Vec::new();
    for (c, slice) in &slices {
        for (lambda, w) in weights.iter().enumerate() {
            points.push((
                Point {
                    context: c.clone(),
                    outcome: w.strategy.outcomes(c),
                    lambda,
                },
                &slice.mass * &w.weight,
            ));
        }
    }
    HiddenVariableModel::new(e.signature().clone(), labels, points)
        .expect("mixture weights sum to 1")
}

/// Checks a Farkas vector for the system built by
/// [`local_polytope_feasibility`] without reusing its constraint matrix:
/// each strategy's value yᵀA is recomputed from the outcomes it produces,
/// and yᵀb from the model's conditionals.
pub fn verify_farkas(
    e: &EmpiricalModel,
    strategies: &[DeterministicStrategy],
    y: &[Rational],
) -> bool {
    let sig = e.signature();
    let slices = e.context_slices();
    let outcomes: Vec<OutcomeTuple> = sig.outcome_tuples().collect();
    if y.len() != 1 + slices.len() * outcomes.len() {
        return false;
    }
    let entry = |ci: usize, o: &OutcomeTuple| {
        let oi = outcomes
            .iter()
            .position(|t| t == o)
            .expect("declared outcome");
        &y[1 + ci * outcomes.len() + oi]
    };
    let target: Rational = y[0].clone()
        + slices
            .values()
            .enumerate()
            .flat_map(|(ci, s)| outcomes.iter().map(move |o| (ci, s, o)))
            .map(|(ci, s, o)| entry(ci, o) * &s.conditional(o))
            .sum::<Rational>();
    if !target.is_negative() {
        return false;
    }
    strategies.iter().all(|s| {
        let value: Rational = y[0].clone()
            + slices
                .keys()
                .enumerate()
                .map(|(ci, c)| entry(ci, &s.outcomes(c)).clone())
                .sum::<Rational>();
        !value.is_negative()
    })
}

impl FeasibilityResult {
    /// Nonzero certificate entries with their constraint descriptions.
    pub fn certificate_terms(&self) -> Vec<(&str, &Rational)> {
        match &self.certificate {
            None => Vec::new(),
            Some(y) => self
                .constraints
                .iter()
                .zip(y)
                .filter(|(_, v)| !v.is_zero())
                .map(|(d, v)| (d.as_str(), v))
                .collect(),
        }
    }
}

impl fmt::Display for FeasibilityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "local polytope over {} deterministic strategies: {}",
            self.strategies,
            if self.feasible {
                "feasible"
            } else {
                "infeasible"
            }
        )?;
        if let Some(ws) = &self.weights {
            for w in ws {
                writeln!(f, "  w(s{}) = {}", w.index, w.weight)?;
            }
        }
        if self.certificate.is_some() {
            writeln!(f, "  Farkas certificate y (nonzero entries):")?;
            for (d, v) in self.certificate_terms() {
                writeln!(f, "    {v:>6}  {d}")?;
            }
            write!(
                f,
                "  certificate check: {}",
                if self.certificate_verified {
                    "verified"
                } else {
                    "FAILED"
                }
            )?;
        }
        Ok(())
    }
}
