//! Classifies the 21 closed property regions, re-checking the achievable
//! ones on a sample model.
//!
//! cargo run --example classification

use hvw::classify::{enumerate_regions, full_report, PropertySet};
use hvw::nogo::{epr_model, DEFAULT_GUARD};
use hvw::properties::PropertyId;

fn main() {
    let report = full_report(Some(&epr_model()), DEFAULT_GUARD).unwrap();
    println!("{report}");

    let all = PropertySet::of(&[
        PropertyId::LambdaIndependence,
        PropertyId::OutcomeIndependence,
        PropertyId::ParameterIndependence,
    ])
    .unwrap();
    let inside: Vec<String> = enumerate_regions()
        .into_iter()
        .filter(|r| r.is_subset(all))
        .map(|r| r.to_string())
        .collect();
    println!();
    println!("regions within {all}: {}", inside.join(" "));
}
