//! Writes, reads and compares model files.
//!
//! cargo run --example model_files

use hvw::constructions::construct_e2;
use hvw::model::io::{parse_model, serialize_model};
use hvw::model::{equivalent_empirical, project_to_empirical, Model};
use hvw::nogo::epr_model;

fn main() {
    let e = epr_model();
    let text = serialize_model(&Model::Empirical(e.clone()));
    println!("{text}");

    let h = construct_e2(&e);
    let hidden = serialize_model(&Model::Hidden(h.clone()));
    println!("{hidden}");

    let back = parse_model(&hidden).unwrap();
    let back = back.as_hidden().unwrap();
    assert_eq!(back, &h);
    println!("round trip: identical");
    println!("equivalent: {}", equivalent_empirical(&e, back).unwrap());
    println!("projection matches: {}", project_to_empirical(back) == e);

    match parse_model(r#"{"sites": [], "weights": []}"#) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(err) => println!("rejected: {err}"),
    }
}
