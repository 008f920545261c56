//! Graphviz export of the Markov graph.

use std::fmt::Write;

use crate::triad::WeightedDigraph;

/// At most six significant digits, no trailing zeros, no exponent.
pub fn format_weight(w: f64) -> String {
    let rounded: f64 = format!("{w:.5e}").parse().expect("formatted float parses");
    rounded.to_string()
}

/// DOT text: one node per vertex, then one edge per nonzero entry, both in
/// index order.
pub fn render_dot(g: &WeightedDigraph) -> String {
    let mut out = String::from("digraph markov {\n");
    for l in g.labels() {
        writeln!(out, "  \"{l}\";").unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            g.labels()[e.from],
            g.labels()[e.to],
            format_weight(e.weight)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
