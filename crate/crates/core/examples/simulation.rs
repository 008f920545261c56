//! Seeded trajectories and Monte Carlo estimates checked against exact values.
//!
//! Run with `cargo run --release --example simulation`.

use evomarkov::prelude::*;

fn main() -> Result<()> {
    let m = samples::four_state_irreducible();
    let chain = MarkovChain::with_default_tol(m.clone())?;

    let t = simulate(&chain, 0, 20, 7)?;
    let path: Vec<&str> = t.states.iter().map(|&s| m.label(s).as_str()).collect();
    println!("seed 7: {}", path.join(" "));

    let steps = 3;
    let exact = m.power(steps as u32).matrix;
    let est = empirical_transition(&chain, steps, 100_000, 1)?;
    for (i, row) in est.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, e)| format!("{:.4}/{:.4}", e.value, exact.get(i, j)))
            .collect();
        println!("{}", cells.join("  "));
    }

    let seven = MarkovChain::with_default_tol(samples::seven_state_two_closed())?;
    for j in 0..seven.dim() {
        let e = estimate_return_frequency(&seven, j, 200, 20_000, 3)?;
        println!("return to e{}: {:.4} +/- {:.4}", j + 1, e.value, e.stderr);
    }
    Ok(())
}
