//! Local polytope decisions: admissible controls, random local models, and
//! an independent check of the Bell certificate.

mod common;

use common::{local_hvm, signatures};
use hvw::lp::{is_farkas_certificate, solve_feasibility, LpOutcome};
use hvw::model::{
    equivalent_empirical, project_to_empirical, Context, EmpiricalModel, JointMeasure,
    OutcomeTuple, Signature,
};
use hvw::nogo::{
    bell_model, enumerate_deterministic_strategies, local_polytope_feasibility, DEFAULT_GUARD,
};
use hvw::properties::{check_lambda_independence, check_locality};
use hvw::{frac, Rational};

fn bell_signature() -> Signature {
    Signature::homogeneous(&["Ann", "Bob"], &["1", "2", "3"], &["+", "-"]).unwrap()
}

fn per_context(table: impl Fn(usize, usize) -> [Rational; 4]) -> EmpiricalModel {
    let mut weights = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for (k, q) in table(i, j).into_iter().enumerate() {
                weights.push((
                    (Context(vec![i, j]), OutcomeTuple(vec![k / 2, k % 2])),
                    q * frac(1, 9),
                ));
            }
        }
    }
    EmpiricalModel::new(bell_signature(), weights).unwrap()
}

pub fn uniform_model() -> EmpiricalModel {
    per_context(|_, _| [frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4)])
}

pub fn anti_correlated_model() -> EmpiricalModel {
    per_context(|_, _| [frac(0, 1), frac(1, 2), frac(1, 2), frac(0, 1)])
}

fn assert_admissible(e: &EmpiricalModel) {
    let r = local_polytope_feasibility(e, DEFAULT_GUARD).unwrap();
    assert!(r.feasible);
    let weights = r.weights.as_ref().unwrap();
    assert!(weights.iter().all(|w| !w.weight.is_negative()));
    assert!(weights.iter().map(|w| &w.weight).sum::<Rational>().is_one());
    let h = r.witness.as_ref().unwrap();
    assert!(check_lambda_independence(h).holds);
    assert!(check_locality(h).holds);
    assert!(equivalent_empirical(e, h).unwrap().holds);
}

#[test]
fn controls_are_admissible() {
    assert_admissible(&uniform_model());
    assert_admissible(&anti_correlated_model());
}

#[test]
fn random_local_models_are_admissible() {
    let sigs = signatures();
    for seed in 0..50u64 {
        let sig = &sigs[(seed % 5) as usize];
        let h = local_hvm(seed, sig, 1 + (seed % 4) as usize);
        assert_admissible(&project_to_empirical(&h));
    }
}

/// Rebuilds the constraint system from scratch (row 0: total weight; then
/// one row per non-null context and outcome tuple) and checks the Bell
/// certificate against it.
#[test]
fn bell_certificate_checks_against_rebuilt_system() {
    let e = bell_model();
    let sig = e.signature();
    let strategies = enumerate_deterministic_strategies(sig, DEFAULT_GUARD).unwrap();
    assert_eq!(strategies.len(), 64);
    let contexts: Vec<Context> = sig.contexts().collect();
    let outcomes: Vec<OutcomeTuple> = sig.outcome_tuples().collect();
    let rows = 1 + contexts.len() * outcomes.len();
    let mut a = vec![vec![Rational::zero(); strategies.len()]; rows];
    let mut b = vec![Rational::zero(); rows];
    b[0] = Rational::one();
    for (j, s) in strategies.iter().enumerate() {
        a[0][j] = Rational::one();
        for (ci, c) in contexts.iter().enumerate() {
            let produced: Vec<usize> =
                c.0.iter()
                    .enumerate()
                    .map(|(t, &m)| s.responses[t][m])
                    .collect();
            let oi = outcomes.iter().position(|o| o.0 == produced).unwrap();
            a[1 + ci * outcomes.len() + oi][j] = Rational::one();
        }
    }
    for (ci, c) in contexts.iter().enumerate() {
        let mass: Rational = outcomes.iter().map(|o| e.weight(c, o)).sum();
        for (oi, o) in outcomes.iter().enumerate() {
            b[1 + ci * outcomes.len() + oi] = e.weight(c, o) / &mass;
        }
    }
    let r = local_polytope_feasibility(&e, DEFAULT_GUARD).unwrap();
    assert!(!r.feasible);
    assert!(r.certificate_verified);
    let y = r.certificate.unwrap();
    assert!(is_farkas_certificate(&a, &b, &y));
    assert!(matches!(
        solve_feasibility(&a, &b),
        LpOutcome::Infeasible(_)
    ));
}

#[test]
fn guard_refuses_large_enumerations() {
    let err = local_polytope_feasibility(&bell_model(), 63).unwrap_err();
    assert!(err.to_string().contains("64"));
}
