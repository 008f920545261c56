//! Full analysis report, matrix file parsing and Graphviz export.
//!
//! Run with `cargo run --example report [path/to/matrix.csv]`.

use evomarkov::cli::{
    analyze, parse_matrix_csv, read_matrix, render_dot, render_report, AnalyzeOptions, Format,
};
use evomarkov::prelude::*;

fn main() -> Result<()> {
    let m = match std::env::args_os().nth(1) {
        Some(path) => read_matrix(path.as_ref())?,
        None => parse_matrix_csv(
            b"labels: a,b,c\n# a leaks into the cycle b <-> c\n0.5,0.5,0\n0,0,1\n0,1,0\n",
        )?,
    };
    let opts = AnalyzeOptions {
        verify_walks: Some(4),
        ..AnalyzeOptions::default()
    };
    let r = analyze(&m, &opts)?;
    print!("{}", render_report(&r, Format::Text));
    println!("{}", render_dot(&graph_from_algebra(&EvolutionAlgebra::new(m), 0.0)));
    Ok(())
}
