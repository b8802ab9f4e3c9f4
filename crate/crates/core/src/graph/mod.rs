//! Finite multigraphs with extended multiplicities and a relation set S.
//!
//! `mult(w, v)` is the number of edges with source `w` and range `v`.
//! The Cuntz-Krieger relation at `v` sums over edges with range `v`, so
//! "in-edges" below are the edges a vertex receives.

mod cycles;
mod io;
mod paths;
mod reach;
mod transforms;

pub use cycles::{classify_cycles, first_return_cycle, CycleClass, CycleClasses};
pub use io::GraphDoc;
pub use paths::{count_paths, path_counts_to, PathQuery};
pub use reach::{backward_reach, forward_reach, reach, strict_forward_reach, Direction};
pub use transforms::{is_af, lift_to_standard, make_standard, subgraph_restrict, Restricted};
pub(crate) use transforms::induced;

use thiserror::Error;

use crate::ext_nat::{ExtNat, Multiplicity};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("adjacency matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("vertex {0} is in S but is not regular")]
    RelationAtSingular(Vertex),
    #[error("subgraph edge {src}->{dst} selects more edges than the graph has")]
    OverSelected { src: Vertex, dst: Vertex },
    #[error("subgraph edge {src}->{dst} has an endpoint outside the vertex set")]
    EdgeOutsideSubgraph { src: Vertex, dst: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelativeGraph {
    n: usize,
    adj: Vec<Multiplicity>,
    relations: VertexSet,
}

impl RelativeGraph {
    /// Builds a graph from rows `adj[w][v]`. Fails unless S consists of
    /// regular vertices.
    pub fn new(adj: Vec<Vec<Multiplicity>>, relations: VertexSet) -> Result<Self, GraphError> {
        let n = adj.len();
        for (row, r) in adj.iter().enumerate() {
            if r.len() != n {
                return Err(GraphError::NotSquare { row, len: r.len(), n });
            }
        }
        let g = RelativeGraph {
            n,
            adj: adj.into_iter().flatten().collect(),
            relations: VertexSet::new(),
        };
        g.with_relations(relations)
    }

    /// The graph algebra: S is every regular vertex.
    pub fn graph_algebra(adj: Vec<Vec<Multiplicity>>) -> Result<Self, GraphError> {
        let g = RelativeGraph::new(adj, VertexSet::new())?;
        let s = g.regular_vertices();
        g.with_relations(s)
    }

    /// Same edges, new relation set.
    pub fn with_relations(mut self, relations: VertexSet) -> Result<Self, GraphError> {
        for v in &relations {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if !self.is_regular(v) {
                return Err(GraphError::RelationAtSingular(v));
            }
        }
        self.relations = relations;
        Ok(self)
    }

    pub fn from_small(adj: &[&[u64]], relations: &[Vertex]) -> Result<Self, GraphError> {
        let rows = adj
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&k| if k == u64::MAX { Multiplicity::Inf } else { Multiplicity::Fin(k) })
                    .collect()
            })
            .collect();
        RelativeGraph::new(rows, relations.iter().copied().collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn mult(&self, src: Vertex, dst: Vertex) -> Multiplicity {
        self.adj[src * self.n + dst]
    }

    pub fn rows(&self) -> Vec<Vec<Multiplicity>> {
        self.adj.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn relations(&self) -> &VertexSet {
        &self.relations
    }

    pub fn in_relations(&self, v: Vertex) -> bool {
        self.relations.contains(v)
    }

    /// Sources of edges into `v`.
    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&w| !self.mult(w, v).is_zero())
    }

    /// Ranges of edges out of `w`.
    pub fn out_neighbors(&self, w: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| !self.mult(w, v).is_zero())
    }

    pub fn in_degree(&self, v: Vertex) -> ExtNat {
        (0..self.n).map(|w| self.mult(w, v).to_ext()).sum()
    }

    pub fn out_degree(&self, w: Vertex) -> ExtNat {
        (0..self.n).map(|v| self.mult(w, v).to_ext()).sum()
    }

    pub fn is_source(&self, v: Vertex) -> bool {
        self.in_neighbors(v).next().is_none()
    }

    pub fn is_infinite_receiver(&self, v: Vertex) -> bool {
        (0..self.n).any(|w| self.mult(w, v).is_inf())
    }

    /// Finite, nonzero number of in-edges.
    pub fn is_regular(&self, v: Vertex) -> bool {
        !self.is_source(v) && !self.is_infinite_receiver(v)
    }

    pub fn regular_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.is_regular(v)).collect()
    }

    pub fn singular_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| !self.is_regular(v)).collect()
    }

    /// Vertices sending infinitely many edges into `v`.
    pub fn omega(&self, v: Vertex) -> VertexSet {
        (0..self.n).filter(|&w| self.mult(w, v).is_inf()).collect()
    }

    pub fn has_infinite_entry(&self) -> bool {
        self.adj.iter().any(|m| m.is_inf())
    }

    pub(crate) fn check_vertices(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.iter().find(|&v| v >= self.n) {
            Some(v) => Err(GraphError::VertexOutOfRange(v)),
            None => Ok(()),
        }
    }

    /// Relabels vertices: vertex `v` of the result is `perm[v]` here.
    pub fn permuted(&self, perm: &[Vertex]) -> RelativeGraph {
        let n = self.n;
        let mut adj = vec![Multiplicity::ZERO; n * n];
        for a in 0..n {
            for b in 0..n {
                adj[a * n + b] = self.mult(perm[a], perm[b]);
            }
        }
        RelativeGraph {
            n,
            adj,
            relations: (0..n).filter(|&a| self.relations.contains(perm[a])).collect(),
        }
    }
}
