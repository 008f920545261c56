//! Command implementations behind the `evomarkov` binary.
//!
//! Each command takes an already-parsed matrix plus options and returns the
//! text to print. All mathematics happens in the library modules; this layer
//! only resolves labels and formats results.

mod csv;
mod dot;
mod report;

use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

pub use self::csv::{parse_matrix_csv, render_matrix_csv};
pub use self::dot::{format_weight, render_dot};
pub use self::report::{
    analyze, render_report, AnalysisReport, AnalyzeOptions, ClassEntry, ClosedSetEntry,
    ClosedSets, RowViolation, WalkSummary,
};

use crate::error::{Error, Result};
use crate::matrix::{MarkovChain, StructureMatrix};
use crate::montecarlo::{empirical_transition, estimate_return_frequency, simulate};
use crate::triad::{graph_from_algebra, EvolutionAlgebra};
use crate::walks::{enumerate_walks, markov_weight, verify_walk_theorem};

/// Output style shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    /// Pretty-printed JSON with a fixed key order.
    Structured,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Reads and parses a matrix file.
pub fn read_matrix(path: &Path) -> Result<StructureMatrix> {
    let bytes = std::fs::read(path)?;
    parse_matrix_csv(&bytes)
}

/// Resolves a state given by label, or failing that by 1-based position.
pub fn resolve_state(m: &StructureMatrix, name: &str) -> Result<usize> {
    if let Some(i) = m.index_of(name) {
        return Ok(i);
    }
    match name.parse::<usize>() {
        Ok(k) if k >= 1 && k <= m.dim() => Ok(k - 1),
        Ok(k) => Err(Error::IndexOutOfRange {
            index: k,
            dim: m.dim(),
        }),
        Err(_) => Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("unknown state `{name}`"),
        }),
    }
}

/// `analyze`: full structural report.
pub fn run_analyze(m: &StructureMatrix, opts: &AnalyzeOptions, format: Format) -> Result<String> {
    Ok(render_report(&analyze(m, opts)?, format))
}

/// `dot`: the Markov graph in Graphviz syntax.
pub fn run_dot(m: &StructureMatrix, zero_tol: f64) -> String {
    render_dot(&graph_from_algebra(&EvolutionAlgebra::new(m.clone()), zero_tol))
}

#[derive(Serialize)]
struct PowerOut<'a> {
    exponent: u32,
    labels: Vec<&'a str>,
    rows: Vec<Vec<f64>>,
}

/// `power`: `M^n`, as a matrix file in text mode.
pub fn run_power(m: &StructureMatrix, n: u32, format: Format) -> String {
    let p = m.power(n).matrix;
    match format {
        Format::Text => render_matrix_csv(&p),
        Format::Structured => to_json(&PowerOut {
            exponent: n,
            labels: p.labels().iter().map(|l| l.as_str()).collect(),
            rows: p.to_rows(),
        }),
    }
}

#[derive(Serialize)]
struct WalkOut {
    vertices: Vec<String>,
    weight: f64,
}

#[derive(Serialize)]
struct WalksOut {
    from: String,
    to: String,
    length: usize,
    walks: Vec<WalkOut>,
    weight_sum: f64,
    matrix_entry: f64,
}

/// `walks`: every walk of a given length with its Markov weight.
pub fn run_walks(
    m: &StructureMatrix,
    from: &str,
    to: &str,
    length: usize,
    zero_tol: f64,
    format: Format,
) -> Result<String> {
    let (i, j) = (resolve_state(m, from)?, resolve_state(m, to)?);
    let g = graph_from_algebra(&EvolutionAlgebra::new(m.clone()), zero_tol);
    let walks = enumerate_walks(&g, i, j, length)?;
    let mut items = Vec::with_capacity(walks.len());
    let mut sum = 0.0;
    for w in &walks {
        let weight = markov_weight(&g, w)?;
        sum += weight;
        items.push(WalkOut {
            vertices: w.vertices().iter().map(|&v| m.label(v).to_string()).collect(),
            weight,
        });
    }
    let out = WalksOut {
        from: m.label(i).to_string(),
        to: m.label(j).to_string(),
        length,
        walks: items,
        weight_sum: sum,
        matrix_entry: m.power(length as u32).matrix.get(i, j),
    };
    Ok(match format {
        Format::Structured => to_json(&out),
        Format::Text => {
            let mut s = String::new();
            for w in &out.walks {
                writeln!(s, "{}  weight {}", w.vertices.join(" -> "), w.weight).unwrap();
            }
            writeln!(
                s,
                "{} walks of length {} from {} to {}; weight sum {}; matrix entry {}",
                out.walks.len(),
                length,
                out.from,
                out.to,
                out.weight_sum,
                out.matrix_entry
            )
            .unwrap();
            s
        }
    })
}

#[derive(Serialize)]
struct VerifyRow {
    from: String,
    to: String,
    length: usize,
    walks: usize,
    weight_sum: f64,
    matrix_entry: f64,
    abs_error: f64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyOut {
    max_length: usize,
    tol: f64,
    checked: usize,
    failed: usize,
    reports: Vec<VerifyRow>,
}

/// `verify-walks`: walk sums against matrix powers for every pair and length.
pub fn run_verify_walks(
    m: &StructureMatrix,
    max_length: usize,
    tol: f64,
    zero_tol: f64,
    format: Format,
) -> Result<String> {
    let g = graph_from_algebra(&EvolutionAlgebra::new(m.clone()), zero_tol);
    let reports = verify_walk_theorem(&g, max_length, tol)?;
    let rows: Vec<VerifyRow> = reports
        .iter()
        .map(|r| VerifyRow {
            from: m.label(r.from).to_string(),
            to: m.label(r.to).to_string(),
            length: r.length,
            walks: r.walks.len(),
            weight_sum: r.weight_sum,
            matrix_entry: r.matrix_entry,
            abs_error: r.abs_error,
            passed: r.passed,
        })
        .collect();
    let out = VerifyOut {
        max_length,
        tol,
        checked: rows.len(),
        failed: rows.iter().filter(|r| !r.passed).count(),
        reports: rows,
    };
    Ok(match format {
        Format::Structured => to_json(&out),
        Format::Text => {
            let mut s = String::new();
            for r in out.reports.iter().filter(|r| !r.passed) {
                writeln!(
                    s,
                    "FAIL {} -> {} length {}: walks {} vs matrix {} (error {:e})",
                    r.from, r.to, r.length, r.weight_sum, r.matrix_entry, r.abs_error
                )
                .unwrap();
            }
            writeln!(
                s,
                "{} checked, {} failed (lengths 1..={}, tol {:e})",
                out.checked, out.failed, max_length, tol
            )
            .unwrap();
            s
        }
    })
}

#[derive(Serialize)]
struct TrajectoryOut {
    seed: u64,
    start: String,
    states: Vec<String>,
}

/// `simulate`: one seeded trajectory.
pub fn run_simulate(
    chain: &MarkovChain,
    start: &str,
    steps: usize,
    seed: u64,
    format: Format,
) -> Result<String> {
    let m = chain.matrix();
    let t = simulate(chain, resolve_state(m, start)?, steps, seed)?;
    let states: Vec<String> = t.states.iter().map(|&s| m.label(s).to_string()).collect();
    Ok(match format {
        Format::Text => format!("{}\n", states.join(" ")),
        Format::Structured => to_json(&TrajectoryOut {
            seed,
            start: m.label(t.start).to_string(),
            states,
        }),
    })
}

/// What `estimate` measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EstimateMode {
    /// `m`-step transition matrix.
    Transition { steps: usize },
    /// Return frequency of one state within a horizon.
    Return { state: String, horizon: usize },
}

#[derive(Serialize)]
struct EstimateCell {
    value: f64,
    stderr: f64,
    exact: f64,
}

#[derive(Serialize)]
struct TransitionOut {
    steps: usize,
    trials: u64,
    seed: u64,
    labels: Vec<String>,
    estimates: Vec<Vec<EstimateCell>>,
}

#[derive(Serialize)]
struct ReturnOut {
    state: String,
    horizon: usize,
    trials: u64,
    seed: u64,
    value: f64,
    stderr: f64,
}

/// `estimate`: Monte Carlo transition matrix or return frequency.
pub fn run_estimate(
    chain: &MarkovChain,
    mode: &EstimateMode,
    trials: u64,
    seed: u64,
    format: Format,
) -> Result<String> {
    let m = chain.matrix();
    if trials == 0 {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: "trials must be positive".into(),
        });
    }
    match mode {
        EstimateMode::Transition { steps } => {
            if *steps == 0 {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: "steps must be positive".into(),
                });
            }
            let est = empirical_transition(chain, *steps, trials, seed)?;
            let exact = chain.power(*steps as u32).matrix;
            let out = TransitionOut {
                steps: *steps,
                trials,
                seed,
                labels: m.labels().iter().map(|l| l.to_string()).collect(),
                estimates: est
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, e)| EstimateCell {
                                value: e.value,
                                stderr: e.stderr,
                                exact: exact.get(i, j),
                            })
                            .collect()
                    })
                    .collect(),
            };
            Ok(match format {
                Format::Structured => to_json(&out),
                Format::Text => {
                    let mut s = String::new();
                    for (i, row) in out.estimates.iter().enumerate() {
                        for (j, c) in row.iter().enumerate() {
                            writeln!(
                                s,
                                "{} -> {}: {} +/- {:.6} (exact {})",
                                out.labels[i],
                                out.labels[j],
                                c.value,
                                c.stderr,
                                format_weight(c.exact)
                            )
                            .unwrap();
                        }
                    }
                    s
                }
            })
        }
        EstimateMode::Return { state, horizon } => {
            let j = resolve_state(m, state)?;
            let e = estimate_return_frequency(chain, j, *horizon, trials, seed)?;
            let out = ReturnOut {
                state: m.label(j).to_string(),
                horizon: *horizon,
                trials,
                seed,
                value: e.value,
                stderr: e.stderr,
            };
            Ok(match format {
                Format::Structured => to_json(&out),
                Format::Text => format!(
                    "return to {} within {} steps: {} +/- {:.6} ({} trials)\n",
                    out.state, horizon, out.value, out.stderr, trials
                ),
            })
        }
    }
}
