//! Periods of generators and primitivity of chains.
//!
//! Run with `cargo run --example periods`.

use evomarkov::prelude::*;

fn main() -> Result<()> {
    for (name, m) in [
        ("period_two", samples::period_two()),
        ("six_state_closed_cycle", samples::six_state_closed_cycle()),
        ("four_state_irreducible", samples::four_state_irreducible()),
    ] {
        let chain = MarkovChain::with_default_tol(m)?;
        let g = graph_from_chain(&chain, 0.0);
        let periods: Vec<String> = (0..g.vertex_count())
            .map(|j| match period(&g, j) {
                Ok(Some(d)) => d.to_string(),
                _ => "-".into(),
            })
            .collect();
        let prim = match is_primitive(&chain) {
            Some(k) => format!("primitive, P^{k} > 0"),
            None => "not primitive".into(),
        };
        println!("{name}: periods [{}], {prim}", periods.join(" "));
    }

    // Wielandt's matrix reaches the bound (n - 1)^2 + 1.
    let n = 4;
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = 1.0;
    }
    rows[n - 1][0] = 0.5;
    rows[n - 1][1] = 0.5;
    let w = MarkovChain::with_default_tol(StructureMatrix::new(&rows, None)?)?;
    println!("wielandt n={n}: {:?}", is_primitive(&w));
    Ok(())
}
