//! Finite Markov chains, evolution algebras and weighted digraphs.
//!
//! A single labeled square matrix is read three ways: as the transition
//! matrix of a homogeneous Markov chain, as the structure matrix of an
//! evolution algebra (`e_i^2 = sum_j M[i][j] e_j`, `e_i e_j = 0` for
//! `i != j`), and as a weighted digraph with an edge `i -> j` whenever
//! `M[i][j] != 0`. The crate converts between the views and decides their
//! structural properties: Markov-ness, graphicability, closed sets and
//! evolution subalgebras, simplicity, primitivity, transient and recurrent
//! generators, periods, idempotents and the class partition.
//!
//! ```
//! use evomarkov::prelude::*;
//!
//! let chain = MarkovChain::with_default_tol(samples::eight_state_partition()).unwrap();
//! let g = graph_from_chain(&chain, 0.0);
//! let p = canonical_partition(&g);
//! assert_eq!(p.transient_states, StateSet::new(vec![0, 1, 3]));
//! ```
//!
//! Two independent checks sit beside the structural code: [`walks`]
//! enumerates walks to recompute matrix powers, and [`montecarlo`] samples
//! trajectories.

pub mod cli;
pub mod error;
pub mod matrix;
pub mod montecarlo;
pub mod samples;
pub mod structure;
pub mod triad;
pub mod walks;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::matrix::{matrix_power, Label, MarkovChain, PowerResult, StructureMatrix, DEFAULT_TOL};
    pub use crate::montecarlo::{
        empirical_transition, estimate_return_frequency, simulate, EmpiricalEstimate, Trajectory,
    };
    pub use crate::samples;
    pub use crate::structure::{
        canonical_partition, classify_generators, communication_classes, enumerate_closed_sets,
        forward_closure, idempotents, is_accessible, is_closed, is_primitive, is_simple, period,
        subalgebra, ClassPartition, CommClass, StateSet,
    };
    pub use crate::triad::{
        algebra_from_chain, algebra_from_graph, chain_from_algebra, graph_from_algebra,
        graph_from_chain, is_graphicable, is_markov, Edge, EvolutionAlgebra, Walk,
        WeightedDigraph,
    };
    pub use crate::walks::{
        enumerate_walks, markov_weight, verify_walk_theorem, walk_weight_sum, WalkReport,
    };
}
