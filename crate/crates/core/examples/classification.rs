//! Transient and recurrent generators, idempotents and the class partition.
//!
//! Run with `cargo run --example classification`.

use evomarkov::prelude::*;

fn show(labels: &[Label], s: &StateSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

fn main() {
    for (name, m) in [
        ("seven_state_two_closed", samples::seven_state_two_closed()),
        ("eight_state_partition", samples::eight_state_partition()),
    ] {
        let alg = EvolutionAlgebra::new(m);
        let g = graph_from_algebra(&alg, 0.0);
        let labels = g.labels();
        let p = canonical_partition(&g);

        println!("{name}");
        println!("  transient  {}", show(labels, &p.transient_states));
        println!("  recurrent  {}", show(labels, &p.recurrent_states));
        for c in &p.classes {
            let kind = if c.closed { "closed" } else { "open" };
            println!("  class {} {kind}", show(labels, &c.members));
        }
        println!("  idempotents {}", show(labels, &idempotents(&alg, DEFAULT_TOL)));
    }
}
