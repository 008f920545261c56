//! The analysis report: every structural property of one structure matrix.

use std::fmt::Write;

use serde::Serialize;

use crate::error::Result;
use crate::matrix::{Label, MarkovChain, StructureMatrix, DEFAULT_TOL};
use crate::structure::{
    canonical_partition, enumerate_closed_sets, idempotents, is_primitive, subalgebra_with_tol,
    StateSet, DEFAULT_CLOSED_SETS_CAP,
};
use crate::triad::{graph_from_algebra, graph_from_chain, is_graphicable, EvolutionAlgebra};
use crate::walks::verify_walk_theorem;

use super::Format;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    pub tol: f64,
    pub zero_tol: f64,
    pub closed_sets_cap: usize,
    /// Run the walk-sum check up to this length.
    pub verify_walks: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tol: DEFAULT_TOL,
            zero_tol: 0.0,
            closed_sets_cap: DEFAULT_CLOSED_SETS_CAP,
            verify_walks: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowViolation {
    pub row: String,
    pub sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassEntry {
    pub members: Vec<String>,
    pub closed: bool,
    pub recurrent: bool,
    pub period: Option<u64>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedSetEntry {
    pub members: Vec<String>,
    pub laws: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedSets {
    pub cap: usize,
    /// `false` when the dimension exceeded `cap` and nothing was enumerated.
    pub enumerated: bool,
    pub sets: Vec<ClosedSetEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkSummary {
    pub max_length: usize,
    pub tol: f64,
    pub checked: usize,
    pub failed: usize,
    pub max_abs_error: f64,
}

/// Stable key order is the field order below.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dimension: usize,
    pub labels: Vec<String>,
    pub is_markov: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub markov_violation: Option<RowViolation>,
    pub is_graphicable: bool,
    pub is_simple: bool,
    /// Present only for Markov input; inner `None` means not primitive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitivity_index: Option<Option<u64>>,
    pub idempotents: Vec<String>,
    pub transient: Vec<String>,
    pub recurrent: Vec<String>,
    pub classes: Vec<ClassEntry>,
    pub closed_sets: ClosedSets,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_verification: Option<WalkSummary>,
}

fn names(labels: &[Label], set: &StateSet) -> Vec<String> {
    set.iter().map(|i| labels[i].to_string()).collect()
}

/// Builds the report from library calls only.
pub fn analyze(m: &StructureMatrix, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let labels = m.labels();
    let alg = EvolutionAlgebra::new(m.clone());
    let chain = MarkovChain::new(m.clone(), opts.tol).ok();
    let graph = match &chain {
        Some(c) => graph_from_chain(c, opts.zero_tol),
        None => graph_from_algebra(&alg, opts.zero_tol),
    };
    let partition = canonical_partition(&graph);

    let closed_sets = match enumerate_closed_sets(&graph, opts.closed_sets_cap) {
        Ok(sets) => ClosedSets {
            cap: opts.closed_sets_cap,
            enumerated: true,
            sets: sets
                .iter()
                .map(|s| {
                    let sub = subalgebra_with_tol(&alg, s, opts.zero_tol)?;
                    Ok(ClosedSetEntry {
                        members: names(labels, s),
                        laws: sub.laws(),
                    })
                })
                .collect::<Result<_>>()?,
        },
        Err(crate::Error::DimensionTooLarge { .. }) => ClosedSets {
            cap: opts.closed_sets_cap,
            enumerated: false,
            sets: Vec::new(),
        },
        Err(e) => return Err(e),
    };

    let walk_verification = match opts.verify_walks {
        Some(max_length) => {
            let reports = verify_walk_theorem(&graph, max_length, opts.tol)?;
            Some(WalkSummary {
                max_length,
                tol: opts.tol,
                checked: reports.len(),
                failed: reports.iter().filter(|r| !r.passed).count(),
                max_abs_error: reports.iter().map(|r| r.abs_error).fold(0.0, f64::max),
            })
        }
        None => None,
    };

    Ok(AnalysisReport {
        dimension: m.dim(),
        labels: labels.iter().map(Label::to_string).collect(),
        is_markov: chain.is_some(),
        markov_violation: m
            .first_non_stochastic_row(opts.tol)
            .map(|(row, sum)| RowViolation {
                row: labels[row].to_string(),
                sum,
            }),
        is_graphicable: is_graphicable(&alg, opts.tol),
        is_simple: partition.classes.len() == 1,
        primitivity_index: chain.as_ref().map(is_primitive),
        idempotents: names(labels, &idempotents(&alg, opts.tol)),
        transient: names(labels, &partition.transient_states),
        recurrent: names(labels, &partition.recurrent_states),
        classes: partition
            .classes
            .iter()
            .map(|c| ClassEntry {
                members: names(labels, &c.members),
                closed: c.closed,
                recurrent: c.recurrent,
                period: c.period,
                degenerate: c.degenerate,
            })
            .collect(),
        closed_sets,
        walk_verification,
    })
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_report(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(r),
    }
}

fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    if let Some(v) = &r.markov_violation {
        writeln!(
            out,
            "NOTE: non-Markov structure matrix (row {} sums to {}); Markov-only fields omitted",
            v.row, v.sum
        )
        .unwrap();
    }
    writeln!(out, "dimension: {}", r.dimension).unwrap();
    writeln!(out, "labels: {}", r.labels.join(" ")).unwrap();
    writeln!(out, "markov: {}", yes_no(r.is_markov)).unwrap();
    writeln!(out, "graphicable: {}", yes_no(r.is_graphicable)).unwrap();
    writeln!(out, "simple: {}", yes_no(r.is_simple)).unwrap();
    if let Some(p) = r.primitivity_index {
        match p {
            Some(k) => writeln!(out, "primitive: yes (index {k})").unwrap(),
            None => writeln!(out, "primitive: no").unwrap(),
        }
    }
    writeln!(out, "idempotents: {}", braces(&r.idempotents)).unwrap();
    writeln!(out, "transient: {}", braces(&r.transient)).unwrap();
    writeln!(out, "recurrent: {}", braces(&r.recurrent)).unwrap();
    writeln!(out, "classes:").unwrap();
    for c in &r.classes {
        let mut tags = vec![if c.closed { "closed" } else { "open" }];
        tags.push(if c.recurrent { "recurrent" } else { "transient" });
        if c.degenerate {
            tags.push("degenerate: zero row");
        }
        let period = match c.period {
            Some(p) => format!("period {p}"),
            None => "no cycle".to_string(),
        };
        writeln!(out, "  {}  {}, {}", braces(&c.members), tags.join(", "), period).unwrap();
    }
    if r.closed_sets.enumerated {
        writeln!(out, "closed sets: {}", r.closed_sets.sets.len()).unwrap();
        for s in &r.closed_sets.sets {
            writeln!(out, "  {}", braces(&s.members)).unwrap();
            for law in &s.laws {
                writeln!(out, "    {law}").unwrap();
            }
        }
    } else {
        writeln!(
            out,
            "closed sets: not enumerated (dimension {} exceeds cap {})",
            r.dimension, r.closed_sets.cap
        )
        .unwrap();
    }
    if let Some(w) = &r.walk_verification {
        writeln!(
            out,
            "walk sums (lengths 1..={}): {} checked, {} failed, max error {:e}",
            w.max_length, w.checked, w.failed, w.max_abs_error
        )
        .unwrap();
    }
    out
}
