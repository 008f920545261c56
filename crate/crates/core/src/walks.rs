//! Brute-force walk enumeration and Markov weights.
//!
//! The `(i, j)` entry of `M^n` equals the sum, over all walks of length `n`
//! from `i` to `j`, of the product of edge weights along the walk. This
//! module computes the right-hand side by explicit enumeration so it can
//! serve as an oracle for [`StructureMatrix::power`](crate::matrix::StructureMatrix::power).

use crate::error::{Error, Result};
use crate::triad::{algebra_from_graph, Walk, WeightedDigraph};

/// Longest walk length accepted by the enumerators.
pub const MAX_WALK_LENGTH: usize = 16;
/// Largest vertex count accepted by the enumerators.
pub const MAX_WALK_DIMENSION: usize = 12;

/// Walk sum vs. matrix-power entry for one `(from, to, length)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkReport {
    pub from: usize,
    pub to: usize,
    pub length: usize,
    pub walks: Vec<Walk>,
    pub weight_sum: f64,
    pub matrix_entry: f64,
    pub abs_error: f64,
    pub passed: bool,
}

fn check_guards(g: &WeightedDigraph, n: usize) -> Result<()> {
    if g.vertex_count() > MAX_WALK_DIMENSION {
        return Err(Error::TooLarge {
            what: "dimension",
            value: g.vertex_count(),
            limit: MAX_WALK_DIMENSION,
        });
    }
    if n > MAX_WALK_LENGTH {
        return Err(Error::TooLarge {
            what: "walk length",
            value: n,
            limit: MAX_WALK_LENGTH,
        });
    }
    Ok(())
}

/// Vertices from which `target` is reachable (zero or more steps).
fn co_reachable(g: &WeightedDigraph, target: usize) -> Vec<bool> {
    let n = g.vertex_count();
    let mut preds = vec![Vec::new(); n];
    for e in g.edges() {
        preds[e.to].push(e.from);
    }
    let mut seen = vec![false; n];
    seen[target] = true;
    let mut stack = vec![target];
    while let Some(v) = stack.pop() {
        for &u in &preds[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// Every walk with exactly `n` edges from `i` to `j`, in lexicographic order.
pub fn enumerate_walks(g: &WeightedDigraph, i: usize, j: usize, n: usize) -> Result<Vec<Walk>> {
    check_guards(g, n)?;
    g.check_index(i)?;
    g.check_index(j)?;
    let useful = co_reachable(g, j);
    let mut out = Vec::new();
    let mut path = vec![i];
    if useful[i] {
        extend(g, j, n, &useful, &mut path, &mut out);
    }
    Ok(out)
}

fn extend(
    g: &WeightedDigraph,
    target: usize,
    remaining: usize,
    useful: &[bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Walk>,
) {
    let here = *path.last().unwrap();
    if remaining == 0 {
        if here == target {
            out.push(Walk::from_trusted(path.clone()));
        }
        return;
    }
    for next in g.successors(here) {
        if useful[next] {
            path.push(next);
            extend(g, target, remaining - 1, useful, path, out);
            path.pop();
        }
    }
}

/// Product of edge weights along `w`; `1` for the empty walk.
pub fn markov_weight(g: &WeightedDigraph, w: &Walk) -> Result<f64> {
    w.vertices().windows(2).try_fold(1.0, |acc, step| {
        g.weight(step[0], step[1])
            .map(|x| acc * x)
            .ok_or(Error::InvalidWalk {
                from: step[0],
                to: step[1],
            })
    })
}

/// Sum of Markov weights over all length-`n` walks from `i` to `j`.
pub fn walk_weight_sum(g: &WeightedDigraph, i: usize, j: usize, n: usize) -> Result<f64> {
    let walks = enumerate_walks(g, i, j, n)?;
    sum_weights(g, &walks)
}

fn sum_weights(g: &WeightedDigraph, walks: &[Walk]) -> Result<f64> {
    walks
        .iter()
        .try_fold(0.0, |acc, w| Ok(acc + markov_weight(g, w)?))
}

/// Compares walk sums against powers of the structure matrix for every
/// `(i, j)` and every length `1..=n_max`.
pub fn verify_walk_theorem(g: &WeightedDigraph, n_max: usize, tol: f64) -> Result<Vec<WalkReport>> {
    check_guards(g, n_max)?;
    let m = algebra_from_graph(g).into_matrix();
    let dim = g.vertex_count();
    let mut reports = Vec::with_capacity(dim * dim * n_max);
    for length in 1..=n_max {
        let power = m.power(length as u32).matrix;
        for from in 0..dim {
            for to in 0..dim {
                let walks = enumerate_walks(g, from, to, length)?;
                let weight_sum = sum_weights(g, &walks)?;
                let matrix_entry = power.get(from, to);
                let abs_error = (weight_sum - matrix_entry).abs();
                reports.push(WalkReport {
                    from,
                    to,
                    length,
                    walks,
                    weight_sum,
                    matrix_entry,
                    abs_error,
                    passed: abs_error <= tol,
                });
            }
        }
    }
    Ok(reports)
}
