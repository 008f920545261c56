//! Random instance generators and brute-force oracles shared by the
//! integration tests. Nothing here calls the structural algorithms it is
//! used to check.

#![allow(dead_code)]

use evomarkov::prelude::*;
use proptest::prelude::*;
use rand::Rng;

/// Row-stochastic matrix with random support. Each present entry is a
/// multiple of `1 / (4 * dim)` or larger, so products of up to `dim` entries
/// stay far above the positivity threshold.
pub fn random_stochastic<R: Rng>(rng: &mut R, dim: usize, density: f64) -> StructureMatrix {
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|_| {
            let mut w: Vec<u32> = (0..dim)
                .map(|_| if rng.gen_bool(density) { rng.gen_range(1..=4) } else { 0 })
                .collect();
            if w.iter().all(|&x| x == 0) {
                w[rng.gen_range(0..dim)] = rng.gen_range(1..=4);
            }
            normalize(&w)
        })
        .collect();
    StructureMatrix::new(&rows, None).unwrap()
}

fn normalize(w: &[u32]) -> Vec<f64> {
    let total: u32 = w.iter().sum();
    w.iter().map(|&x| x as f64 / total as f64).collect()
}

/// Proptest strategy for row-stochastic matrices of dimension `1..=max_dim`.
pub fn stochastic_matrix(max_dim: usize) -> impl Strategy<Value = StructureMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![2 => Just(0u32), 3 => 1u32..=4], n)
                .prop_filter("row needs mass", |r| r.iter().any(|&x| x > 0)),
            n,
        )
        .prop_map(|rows| {
            let rows: Vec<Vec<f64>> = rows.iter().map(|r| normalize(r)).collect();
            StructureMatrix::new(&rows, None).unwrap()
        })
    })
}

/// Arbitrary real matrix with entries in `[0, 1]`.
pub fn unit_matrix(max_dim: usize) -> impl Strategy<Value = StructureMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0.0f64..=1.0, n), n)
            .prop_map(|rows| StructureMatrix::new(&rows, None).unwrap())
    })
}

pub fn algebra(m: &StructureMatrix) -> EvolutionAlgebra {
    EvolutionAlgebra::new(m.clone())
}

pub fn graph(m: &StructureMatrix) -> WeightedDigraph {
    graph_from_algebra(&algebra(m), 0.0)
}

pub fn chain(m: &StructureMatrix) -> MarkovChain {
    MarkovChain::with_default_tol(m.clone()).unwrap()
}

/// Reflexive-transitive closure of the nonzero pattern (Warshall).
pub fn reach_matrix(m: &StructureMatrix) -> Vec<Vec<bool>> {
    let n = m.dim();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || m.get(i, j) != 0.0).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Mutual-reachability classes ordered by least member.
pub fn brute_classes(m: &StructureMatrix) -> Vec<Vec<usize>> {
    let r = reach_matrix(m);
    let n = m.dim();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&j| r[i][j] && r[j][i]).collect();
        for &j in &class {
            assigned[j] = true;
        }
        out.push(class);
    }
    out
}

/// Closedness by powers: no positive `(i, j)` entry with `i` in the set and
/// `j` outside, for every power `1..=dim`.
pub fn closed_by_powers(m: &StructureMatrix, set: &[usize]) -> bool {
    let n = m.dim();
    (1..=n as u32).all(|k| {
        let p = m.power(k).matrix;
        set.iter().all(|&i| {
            (0..n)
                .filter(|j| !set.contains(j))
                .all(|j| p.get(i, j) <= evomarkov::structure::POSITIVITY_THRESHOLD)
        })
    })
}

/// Closedness straight from the definition on the nonzero pattern.
pub fn closed_by_definition(m: &StructureMatrix, set: &[usize]) -> bool {
    set.iter()
        .all(|&i| (0..m.dim()).all(|j| set.contains(&j) || m.get(i, j) == 0.0))
}

/// All nonempty subsets as sorted index lists, in mask order.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Every nonempty closed subset, sorted by size then members.
pub fn brute_closed_sets(m: &StructureMatrix) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = subsets(m.dim())
        .filter(|s| closed_by_definition(m, s))
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Gcd of the lengths `1..=max_len` at which a closed walk through `j`
/// exists, by explicit walk enumeration; `None` if there is none.
pub fn walk_period(g: &WeightedDigraph, j: usize, max_len: usize) -> Option<u64> {
    let d = (1..=max_len)
        .filter(|&n| !enumerate_walks(g, j, j, n).unwrap().is_empty())
        .fold(0, |acc, n| gcd(acc, n as u64));
    (d > 0).then_some(d)
}

pub fn set(one_based: &[usize]) -> StateSet {
    one_based.iter().map(|i| i - 1).collect()
}
