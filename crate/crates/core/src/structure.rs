//! Structural classification of a Markov graph.
//!
//! Accessibility is reflexive (zero steps allowed), so communication is an
//! equivalence relation and its classes are the strongly connected
//! components. Closedness and periods count only walks of length at least
//! one. In a finite chain a generator is recurrent exactly when its class is
//! closed, and closed generator sets are exactly the generator sets of
//! evolution subalgebras.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::MarkovChain;
use crate::triad::{graph_from_algebra, graph_from_chain, EvolutionAlgebra, WeightedDigraph};

/// Entries of a matrix power above this count as positive.
pub const POSITIVITY_THRESHOLD: f64 = 1e-12;

/// Default vertex-count cap for [`enumerate_closed_sets`].
pub const DEFAULT_CLOSED_SETS_CAP: usize = 20;

/// Sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(Vec<usize>);

impl StateSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        StateSet(members)
    }

    /// Validates membership against a vertex count.
    pub fn checked(members: Vec<usize>, dim: usize) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        Ok(Self::new(members))
    }

    pub fn full(dim: usize) -> Self {
        StateSet((0..dim).collect())
    }

    fn from_mask(mask: u64) -> Self {
        StateSet((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    fn membership(&self, dim: usize) -> Vec<bool> {
        let mut inside = vec![false; dim];
        for i in self.iter() {
            inside[i] = true;
        }
        inside
    }

    fn check_in(&self, dim: usize) -> Result<()> {
        match self.0.last() {
            Some(&i) if i >= dim => Err(Error::IndexOutOfRange { index: i, dim }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        StateSet::new(iter.into_iter().collect())
    }
}

/// A communication class with its annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommClass {
    pub members: StateSet,
    pub closed: bool,
    pub recurrent: bool,
    /// Common period of the members; `None` when no member lies on a cycle.
    pub period: Option<u64>,
    /// Singleton whose vertex has no out-edges at all (zero row). Only
    /// possible for non-Markov algebras; such a class is vacuously closed.
    pub degenerate: bool,
}

/// Communication classes plus the transient / recurrent split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub classes: Vec<CommClass>,
    pub transient_states: StateSet,
    pub recurrent_states: StateSet,
}

impl ClassPartition {
    pub fn closed_classes(&self) -> impl Iterator<Item = &CommClass> {
        self.classes.iter().filter(|c| c.closed)
    }

    /// Index into `classes` of the class containing `v`.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(v))
    }
}

/// Strongly connected components, each sorted, ordered by least member.
pub fn communication_classes(g: &WeightedDigraph) -> Vec<StateSet> {
    let mut comps: Vec<StateSet> = tarjan(g).into_iter().map(StateSet::new).collect();
    comps.sort_by_key(|c| c.members()[0]);
    comps
}

/// Iterative Tarjan; components come out in reverse topological order.
fn tarjan(g: &WeightedDigraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (vertex, position in its out-edge list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let out = g.out_edges(v);
            if *pos < out.len() {
                let w = out[*pos].to;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

/// Whether `j` is reachable from `i` in zero or more steps.
pub fn is_accessible(g: &WeightedDigraph, i: usize, j: usize) -> Result<bool> {
    g.check_index(i)?;
    g.check_index(j)?;
    Ok(reachable_from(g, std::iter::once(i))[j])
}

fn reachable_from(g: &WeightedDigraph, sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue: Vec<usize> = Vec::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for w in g.successors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    seen
}

/// No edge leaves `c`.
pub fn is_closed(g: &WeightedDigraph, c: &StateSet) -> Result<bool> {
    Ok(first_leaving_edge(g, c)?.is_none())
}

fn first_leaving_edge(g: &WeightedDigraph, c: &StateSet) -> Result<Option<(usize, usize)>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    c.check_in(g.vertex_count())?;
    let inside = c.membership(g.vertex_count());
    Ok(c
        .iter()
        .flat_map(|i| g.successors(i).map(move |j| (i, j)))
        .find(|&(_, j)| !inside[j]))
}

/// Smallest closed superset of `c`.
pub fn forward_closure(g: &WeightedDigraph, c: &StateSet) -> Result<StateSet> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    c.check_in(g.vertex_count())?;
    let seen = reachable_from(g, c.iter());
    Ok(seen
        .iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i))
        .collect())
}

fn mask_of(c: &StateSet) -> u64 {
    c.iter().fold(0, |m, i| m | 1 << i)
}

/// Every nonempty closed vertex set, sorted by size then members.
///
/// Closed sets are exactly the unions of forward closures of communication
/// classes, so the family is generated from the class closures under union
/// rather than by scanning all `2^n` subsets.
pub fn enumerate_closed_sets(g: &WeightedDigraph, cap_dimension: usize) -> Result<Vec<StateSet>> {
    let n = g.vertex_count();
    let cap = cap_dimension.min(63);
    if n > cap {
        return Err(Error::DimensionTooLarge { dim: n, cap });
    }
    let generators: Vec<u64> = communication_classes(g)
        .iter()
        .map(|c| mask_of(&forward_closure(g, c).expect("class is nonempty")))
        .collect();

    let mut family: HashSet<u64> = HashSet::new();
    let mut members: Vec<u64> = Vec::new();
    for &gen in &generators {
        let mut fresh: Vec<u64> = members
            .iter()
            .map(|&m| m | gen)
            .chain(std::iter::once(gen))
            .filter(|m| !family.contains(m))
            .collect();
        fresh.sort_unstable();
        fresh.dedup();
        for m in fresh {
            family.insert(m);
            members.push(m);
        }
    }

    let mut sets: Vec<StateSet> = members.into_iter().map(StateSet::from_mask).collect();
    for s in &sets {
        assert!(
            is_closed(g, s).expect("nonempty"),
            "generated set {s:?} is not closed"
        );
    }
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(sets)
}

/// Restriction of `alg` to the generators in `c`, which must be closed.
pub fn subalgebra(alg: &EvolutionAlgebra, c: &StateSet) -> Result<EvolutionAlgebra> {
    subalgebra_with_tol(alg, c, 0.0)
}

/// As [`subalgebra`], with coefficients of magnitude at most `zero_tol`
/// ignored when checking closedness.
pub fn subalgebra_with_tol(
    alg: &EvolutionAlgebra,
    c: &StateSet,
    zero_tol: f64,
) -> Result<EvolutionAlgebra> {
    let g = graph_from_algebra(alg, zero_tol);
    if let Some((from, to)) = first_leaving_edge(&g, c)? {
        return Err(Error::NotClosed { from, to });
    }
    Ok(EvolutionAlgebra::new(alg.matrix().restrict(c.members())?))
}

/// Simple iff the Markov graph has a single communication class.
pub fn is_simple(alg: &EvolutionAlgebra) -> bool {
    communication_classes(&graph_from_algebra(alg, 0.0)).len() == 1
}

/// Least `k` with every entry of `P^k` positive, searched up to the
/// Wielandt bound `(n-1)^2 + 1`; `None` if the chain is not primitive.
///
/// Works on the boolean support pattern so no floating underflow can hide a
/// positive entry.
pub fn is_primitive(chain: &MarkovChain) -> Option<u64> {
    let g = graph_from_chain(chain, 0.0);
    let n = g.vertex_count();
    if communication_classes(&g).len() != 1 {
        return None;
    }
    let bound = (n as u64 - 1).pow(2) + 1;
    let step: Vec<Vec<usize>> = (0..n).map(|i| g.successors(i).collect()).collect();
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let mut row = vec![false; n];
            for &j in &step[i] {
                row[j] = true;
            }
            row
        })
        .collect();
    for k in 1..=bound {
        if reach.iter().all(|row| row.iter().all(|&b| b)) {
            return Some(k);
        }
        if k == bound {
            break;
        }
        reach = reach
            .iter()
            .map(|row| {
                let mut next = vec![false; n];
                for (mid, _) in row.iter().enumerate().filter(|(_, &b)| b) {
                    for &j in &step[mid] {
                        next[j] = true;
                    }
                }
                next
            })
            .collect();
    }
    None
}

/// `(transient, recurrent)`: recurrent generators are those whose class is closed.
pub fn classify_generators(g: &WeightedDigraph) -> (StateSet, StateSet) {
    let p = canonical_partition(g);
    (p.transient_states, p.recurrent_states)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Period of every vertex, computed class by class.
fn class_period(g: &WeightedDigraph, class: &StateSet) -> Option<u64> {
    let n = g.vertex_count();
    let inside = class.membership(n);
    let root = class.members()[0];
    let mut level = vec![u64::MAX; n];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.successors(v).filter(|&w| inside[w]) {
            if level[w] == u64::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut d = 0;
    for u in class.iter() {
        for v in g.successors(u).filter(|&v| inside[v]) {
            d = gcd(d, (level[u] + 1).abs_diff(level[v]));
        }
    }
    // No intra-class edge: a singleton without a loop, on no cycle.
    let has_cycle = class.iter().any(|u| g.successors(u).any(|v| inside[v]));
    has_cycle.then_some(d)
}

/// Gcd of the lengths of closed walks through `j`; `None` if there are none.
pub fn period(g: &WeightedDigraph, j: usize) -> Result<Option<u64>> {
    g.check_index(j)?;
    let class = communication_classes(g)
        .into_iter()
        .find(|c| c.contains(j))
        .expect("classes cover all vertices");
    Ok(class_period(g, &class))
}

/// Generators with `e_i^2 = e_i` within `tol`.
pub fn idempotents(alg: &EvolutionAlgebra, tol: f64) -> StateSet {
    let m = alg.matrix();
    (0..m.dim())
        .filter(|&i| {
            m.row(i).iter().enumerate().all(|(j, &x)| {
                let target = if i == j { 1.0 } else { 0.0 };
                (x - target).abs() <= tol
            })
        })
        .collect()
}

/// Communication classes annotated with closedness, recurrence and period.
pub fn canonical_partition(g: &WeightedDigraph) -> ClassPartition {
    let mut transient = Vec::new();
    let mut recurrent = Vec::new();
    let classes: Vec<CommClass> = communication_classes(g)
        .into_iter()
        .map(|members| {
            let closed = is_closed(g, &members).expect("class is nonempty");
            let period = class_period(g, &members);
            let degenerate = members.len() == 1 && g.out_degree(members.members()[0]) == 0;
            if closed {
                recurrent.extend(members.iter());
            } else {
                transient.extend(members.iter());
            }
            CommClass {
                members,
                closed,
                recurrent: closed,
                period,
                degenerate,
            }
        })
        .collect();
    ClassPartition {
        classes,
        transient_states: StateSet::new(transient),
        recurrent_states: StateSet::new(recurrent),
    }
}
