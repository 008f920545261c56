//! Closed sets of generators and the evolution subalgebras they span.
//!
//! Run with `cargo run --example closed_sets`.

use evomarkov::prelude::*;

fn main() -> Result<()> {
    let alg = EvolutionAlgebra::new(samples::eight_state_partition());
    let g = graph_from_algebra(&alg, 0.0);
    let names = |s: &StateSet| -> Vec<&str> { s.iter().map(|i| g.labels()[i].as_str()).collect() };

    let closure = forward_closure(&g, &StateSet::new(vec![0]))?;
    println!("closure of {{e1}}: {:?}", names(&closure));

    let sets = enumerate_closed_sets(&g, 20)?;
    println!("{} closed sets", sets.len());
    for s in &sets {
        println!("  {:?}", names(s));
    }

    let sub = subalgebra(&alg, &StateSet::new(vec![2, 5]))?;
    println!("{sub}");
    println!("simple: {}", is_simple(&sub));

    match subalgebra(&alg, &StateSet::new(vec![0, 1])) {
        Err(e) => println!("{{e1, e2}}: {e}"),
        Ok(_) => unreachable!(),
    }
    println!("whole algebra simple: {}", is_simple(&alg));
    Ok(())
}
