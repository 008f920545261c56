//! Entries of P^n recomputed as sums of walk weights.
//!
//! Run with `cargo run --example walks`.

use evomarkov::prelude::*;

fn main() -> Result<()> {
    let m = samples::three_state_absorbing();
    let chain = MarkovChain::with_default_tol(m.clone())?;
    let g = graph_from_chain(&chain, 0.0);

    let p2 = matrix_power(&m, 2).matrix;
    for w in enumerate_walks(&g, 0, 2, 2)? {
        println!("{}  weight {}", w.display(g.labels()), markov_weight(&g, &w)?);
    }
    println!("sum {} vs P^2[e1][e3] = {}", walk_weight_sum(&g, 0, 2, 2)?, p2.get(0, 2));

    let reports = verify_walk_theorem(&g, 6, 1e-9)?;
    let worst = reports.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    println!(
        "{} entries checked up to length 6, {} failed, max error {worst:e}",
        reports.len(),
        reports.iter().filter(|r| !r.passed).count()
    );
    Ok(())
}
