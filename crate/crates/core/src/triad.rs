//! Conversions between Markov chains, evolution algebras and weighted digraphs.
//!
//! All three views share one [`StructureMatrix`]. A chain becomes an
//! algebra by reading its transition matrix as structure constants
//! (`e_i^2 = sum_j p_ij e_j`), and an algebra becomes a digraph with an edge
//! `i -> j` of weight `M[i][j]` whenever `e_j` appears in `e_i^2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Label, MarkovChain, StructureMatrix};

/// Evolution algebra given by its structure matrix (row convention).
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionAlgebra {
    matrix: StructureMatrix,
}

impl EvolutionAlgebra {
    pub fn new(matrix: StructureMatrix) -> Self {
        EvolutionAlgebra { matrix }
    }

    pub fn matrix(&self) -> &StructureMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> StructureMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn generators(&self) -> &[Label] {
        self.matrix.labels()
    }

    /// The law for generator `i`, e.g. `e1^2 = 0.5 e1 + 0.5 e3`.
    pub fn law(&self, i: usize) -> String {
        let m = &self.matrix;
        let mut rhs = String::new();
        for (j, &c) in m.row(i).iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let term = if c.abs() == 1.0 {
                m.label(j).to_string()
            } else {
                format!("{} {}", c.abs(), m.label(j))
            };
            if rhs.is_empty() {
                if c < 0.0 {
                    rhs.push('-');
                }
            } else {
                rhs.push_str(if c < 0.0 { " - " } else { " + " });
            }
            rhs.push_str(&term);
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        format!("{}^2 = {}", m.label(i), rhs)
    }

    pub fn laws(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.law(i)).collect()
    }
}

impl fmt::Display for EvolutionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            writeln!(f, "{}", self.law(i))?;
        }
        Ok(())
    }
}

/// A directed edge with a nonzero weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Vertices plus weighted directed edges; loops allowed, no parallel edges.
///
/// Edges are kept sorted by `(from, to)` so out-neighbourhoods come out in
/// ascending target order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    labels: Vec<Label>,
    edges: Vec<Edge>,
    // out[i] = range into `edges`
    offsets: Vec<usize>,
}

impl WeightedDigraph {
    pub fn new(labels: Vec<Label>, mut edges: Vec<Edge>) -> Result<Self> {
        let n = labels.len();
        // Reuse label validation from the matrix type.
        StructureMatrix::zeros(labels.clone())?;
        for e in &edges {
            for idx in [e.from, e.to] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, dim: n });
                }
            }
            if e.weight == 0.0 || !e.weight.is_finite() {
                return Err(Error::InvalidWeight {
                    from: e.from,
                    to: e.to,
                });
            }
        }
        edges.sort_by_key(|e| (e.from, e.to));
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].from, w[0].to) == (w[1].from, w[1].to))
        {
            return Err(Error::DuplicateEdge {
                from: w[0].from,
                to: w[0].to,
            });
        }
        let mut offsets = vec![0; n + 1];
        for e in &edges {
            offsets[e.from + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Ok(WeightedDigraph {
            labels,
            edges,
            offsets,
        })
    }

    /// Graph whose edges all carry weight 1.
    pub fn unweighted(labels: Vec<Label>, arcs: &[(usize, usize)]) -> Result<Self> {
        let edges = arcs
            .iter()
            .map(|&(from, to)| Edge {
                from,
                to,
                weight: 1.0,
            })
            .collect();
        Self::new(labels, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Out-edges of `i`, ascending by target.
    pub fn out_edges(&self, i: usize) -> &[Edge] {
        &self.edges[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Out-neighbourhood of `i`, ascending.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_edges(i).iter().map(|e| e.to)
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<f64> {
        let out = self.out_edges(from);
        out.binary_search_by_key(&to, |e| e.to)
            .ok()
            .map(|k| out[k].weight)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.weight(from, to).is_some()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.vertex_count(),
            })
        }
    }
}

/// A vertex sequence; consecutive pairs must be edges of the owning graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    /// Checks every step against `g`.
    pub fn new(g: &WeightedDigraph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in &vertices {
            g.check_index(v)?;
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidWalk {
                    from: w[0],
                    to: w[1],
                });
            }
        }
        Ok(Walk { vertices })
    }

    pub(crate) fn from_trusted(vertices: Vec<usize>) -> Self {
        Walk { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// `e1 -> e2 -> e1` style rendering.
    pub fn display(&self, labels: &[Label]) -> String {
        self.vertices
            .iter()
            .map(|&v| labels[v].as_str())
            .collect::<Vec<_>>()
            .join(" -> ")
    }
}

pub fn algebra_from_chain(chain: &MarkovChain) -> EvolutionAlgebra {
    EvolutionAlgebra::new(chain.matrix().clone())
}

/// Certifies the algebra's structure matrix as a transition matrix.
pub fn chain_from_algebra(alg: &EvolutionAlgebra, tol: f64) -> Result<MarkovChain> {
    MarkovChain::new(alg.matrix().clone(), tol)
}

/// Edge `(i, j)` iff `|M[i][j]| > zero_tol`, weighted by `M[i][j]`.
pub fn graph_from_algebra(alg: &EvolutionAlgebra, zero_tol: f64) -> WeightedDigraph {
    graph_from_matrix(alg.matrix(), zero_tol, false)
}

/// The Markov graph of a chain. Entries in `[-tol, 0)` are read as zero.
pub fn graph_from_chain(chain: &MarkovChain, zero_tol: f64) -> WeightedDigraph {
    graph_from_matrix(chain.matrix(), zero_tol, true)
}

fn graph_from_matrix(m: &StructureMatrix, zero_tol: f64, drop_negative: bool) -> WeightedDigraph {
    let n = m.dim();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = m.get(i, j);
            if w.abs() > zero_tol && !(drop_negative && w < 0.0) {
                edges.push(Edge {
                    from: i,
                    to: j,
                    weight: w,
                });
            }
        }
    }
    WeightedDigraph::new(m.labels().to_vec(), edges).expect("edges derived from a valid matrix")
}

/// `M[i][j]` = weight of edge `(i, j)`, zero where absent.
pub fn algebra_from_graph(g: &WeightedDigraph) -> EvolutionAlgebra {
    let mut m = StructureMatrix::zeros(g.labels().to_vec()).expect("graph labels are valid");
    for e in g.edges() {
        m.set(e.from, e.to, e.weight);
    }
    EvolutionAlgebra::new(m)
}

pub fn is_markov(alg: &EvolutionAlgebra, tol: f64) -> bool {
    alg.matrix().is_row_stochastic(tol)
}

/// Every structure constant within `tol` of 0 or 1.
pub fn is_graphicable(alg: &EvolutionAlgebra, tol: f64) -> bool {
    alg.matrix()
        .rows()
        .flatten()
        .all(|&x| x.abs() <= tol || (x - 1.0).abs() <= tol)
}
