//! Runs every checker on a few small models and prints exact witnesses.
//!
//! cargo run --example property_checks

use hvw::constructions::{construct_e1, construct_e2, construct_sv};
use hvw::model::HiddenVariableModel;
use hvw::nogo::{bell_model, epr_escape_model, epr_model};
use hvw::properties::{check_exchangeability, check_non_contextuality, PropertyId};

fn report(name: &str, h: &HiddenVariableModel) {
    println!("{name} (|Λ| = {})", h.lambdas().len());
    for p in PropertyId::HIDDEN {
        println!("  {p:<24} {}", p.check_hidden(h).unwrap());
    }
}

fn main() {
    report("EPR, single λ", &construct_sv(&epr_model()));
    report("EPR, two λ", &epr_escape_model());
    report("Bell, E1", &construct_e1(&bell_model()));
    report("Bell, E2", &construct_e2(&bell_model()));

    let bell = bell_model();
    println!("Bell empirical model");
    println!(
        "  non-contextuality        {}",
        check_non_contextuality(&bell)
    );
    println!(
        "  exchangeability          {}",
        check_exchangeability(&bell).unwrap()
    );
}
