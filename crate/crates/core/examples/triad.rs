//! One matrix, three views: chain, evolution algebra, weighted digraph.
//!
//! Run with `cargo run --example triad`.

use evomarkov::prelude::*;

fn main() -> Result<()> {
    let chain = MarkovChain::with_default_tol(samples::four_state_irreducible())?;

    let alg = algebra_from_chain(&chain);
    println!("{alg}");

    let g = graph_from_algebra(&alg, 0.0);
    for e in g.edges() {
        println!("{} -> {}  {}", g.labels()[e.from], g.labels()[e.to], e.weight);
    }

    assert!(is_markov(&alg, DEFAULT_TOL));
    assert_eq!(algebra_from_graph(&g), alg);
    assert_eq!(chain_from_algebra(&alg, DEFAULT_TOL)?, chain);

    // Negative structure constants: an algebra that is no chain.
    let odd = EvolutionAlgebra::new(samples::non_markov_three());
    println!("markov: {}", is_markov(&odd, DEFAULT_TOL));
    println!("{odd}");
    Ok(())
}
