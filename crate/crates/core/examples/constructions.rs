//! Builds the three equivalent hidden-variable completions of a random
//! empirical model and checks what each one guarantees.
//!
//! cargo run --example constructions -- [seed]

use hvw::constructions::{e2_lambda_size, ConstructionMethod};
use hvw::model::equivalent_empirical;
use hvw::model::random::{random_empirical, shape};
use hvw::properties::PropertyId;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let sig = shape(&[(2, 2), (2, 3)]).unwrap();
    let e = random_empirical(seed, &sig);
    println!("seed {seed}; E2 needs L = {}", e2_lambda_size(&e));

    for m in ConstructionMethod::ALL {
        let h = m.construct(&e);
        println!("{m}: |Λ| = {}", h.lambdas().len());
        println!("  equivalent: {}", equivalent_empirical(&e, &h).unwrap());
        for p in PropertyId::HIDDEN {
            let v = p.check_hidden(&h).unwrap();
            let mark = if m.guarantees().contains(&p) {
                "*"
            } else {
                " "
            };
            println!("  {mark} {p:<24} {v}");
        }
    }
    println!("(* = guaranteed by the construction)");
}
