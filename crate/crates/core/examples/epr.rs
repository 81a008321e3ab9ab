//! The anti-correlated two-site model: a single-valued completion breaks
//! Outcome Independence, while a two-valued λ restores it.
//!
//! cargo run --example epr

use hvw::constructions::construct_sv;
use hvw::model::{Event, JointMeasure};
use hvw::nogo::{epr_escape_model, epr_model, verify_epr};

fn main() {
    let e = epr_model();
    let h = construct_sv(&e);
    let given = Event::new().context(&["A", "B"]).lambda("λ");
    let ann_plus = Event::new().outcome("Ann", "+");
    let p = h.cond_prob(&ann_plus, &given).unwrap();
    let q = h
        .cond_prob(&ann_plus, &given.clone().outcome("Bob", "-"))
        .unwrap();
    println!("single λ: p(Ann=+ | A,B,λ) = {p}, but p(Ann=+ | A,B,Bob=-,λ) = {q}");

    let escape = epr_escape_model();
    for l in escape.lambdas() {
        let cell = Event::new().context(&["A", "B"]).lambda(l);
        let p = escape.cond_prob(&ann_plus, &cell).unwrap();
        println!("two λ:    p(Ann=+ | A,B,{l}) = {p}");
    }

    println!();
    println!("{}", verify_epr());
}
