//! Decides membership in the local polytope for the three-direction spin
//! model and for a couple of admissible controls.
//!
//! cargo run --example bell_polytope

use hvw::frac;
use hvw::model::random::shape;
use hvw::model::{Context, EmpiricalModel, JointMeasure, OutcomeTuple};
use hvw::nogo::{bell_certificate, bell_model, local_polytope_feasibility, DEFAULT_GUARD};

fn main() {
    let bell = bell_model();
    let r = local_polytope_feasibility(&bell, DEFAULT_GUARD).unwrap();
    println!("{r}");
    println!();
    println!("{}", bell_certificate());

    // Uniform noise is trivially admissible.
    let sig = bell.signature().clone();
    let mut weights = Vec::new();
    for c in sig.contexts() {
        for o in sig.outcome_tuples() {
            weights.push(((c.clone(), o), frac(1, 36)));
        }
    }
    let uniform = EmpiricalModel::new(sig, weights).unwrap();
    let r = local_polytope_feasibility(&uniform, DEFAULT_GUARD).unwrap();
    println!();
    println!(
        "uniform model: {}",
        if r.feasible { "feasible" } else { "infeasible" }
    );
    if let Some(h) = &r.witness {
        println!(
            "  witness uses {} strategies as λ values",
            h.lambdas().len()
        );
    }

    // A single-site model is always admissible.
    let one = shape(&[(2, 3)]).unwrap();
    let e = EmpiricalModel::new(
        one,
        [
            ((Context(vec![0]), OutcomeTuple(vec![0])), frac(1, 4)),
            ((Context(vec![0]), OutcomeTuple(vec![2])), frac(1, 4)),
            ((Context(vec![1]), OutcomeTuple(vec![1])), frac(1, 2)),
        ],
    )
    .unwrap();
    let r = local_polytope_feasibility(&e, DEFAULT_GUARD).unwrap();
    println!("single site: {r}");
}
