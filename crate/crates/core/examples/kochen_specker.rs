//! The eighteen-direction table: no 0/1 coloring exists, and the
//! exchangeable model built on it is contextual.
//!
//! cargo run --release --example kochen_specker

use hvw::nogo::{ks_model, ks_parity_certificate, ks_search, ks_table, verify_ks};
use hvw::properties::{check_exchangeability, non_contextuality_violation};

fn main() {
    let table = ks_table();
    for (i, col) in table.columns().iter().enumerate() {
        println!("column {}: {}", i + 1, col.join(" "));
    }
    let search = ks_search(&table).unwrap();
    println!("{search}");
    println!("{}", ks_parity_certificate(&table));

    let e = ks_model();
    println!("exchangeability: {}", check_exchangeability(&e).unwrap());
    match non_contextuality_violation(&e) {
        Some(v) => println!("contextual: {v}"),
        None => println!("non-contextual"),
    }
    println!();
    println!("{}", verify_ks());
}
