use super::{classify_cycles, GraphError, RelativeGraph};
use crate::ext_nat::Multiplicity;
use crate::vertex_set::{Vertex, VertexSet};

/// A graph built on a subset of another graph's vertices. Vertex `i` of
/// `graph` is vertex `original[i]` of the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restricted {
    pub graph: RelativeGraph,
    pub original: Vec<Vertex>,
}

impl Restricted {
    /// Local id of a parent vertex.
    pub fn local(&self, v: Vertex) -> Option<Vertex> {
        self.original.binary_search(&v).ok()
    }

    pub fn to_local(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.local(v)).collect()
    }

    pub fn to_parent(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|i| self.original[i]).collect()
    }
}

/// Turns a relative graph into an ordinary graph algebra presentation: each
/// regular vertex outside S gets a fresh source copying its out-edges.
pub fn make_standard(g: &RelativeGraph) -> RelativeGraph {
    let n = g.vertex_count();
    let missing: Vec<Vertex> = g.regular_vertices().difference(g.relations()).iter().collect();
    if missing.is_empty() {
        return g.clone();
    }
    let m = n + missing.len();
    let mut rows = vec![vec![Multiplicity::ZERO; m]; m];
    for w in 0..n {
        for v in 0..n {
            rows[w][v] = g.mult(w, v);
        }
    }
    for (k, &v) in missing.iter().enumerate() {
        for x in 0..n {
            rows[n + k][x] = g.mult(v, x);
        }
    }
    RelativeGraph::graph_algebra(rows).expect("square by construction")
}

/// The vertex set of make_standard(g) whose projection corresponds to p_V:
/// each regular vertex of V outside S brings its fresh copy along.
pub fn lift_to_standard(g: &RelativeGraph, v: &VertexSet) -> VertexSet {
    let n = g.vertex_count();
    let missing = g.regular_vertices().difference(g.relations());
    let mut out = v.clone();
    for (k, x) in missing.iter().enumerate() {
        if v.contains(x) {
            out.insert(n + k);
        }
    }
    out
}

/// The subgraph (F0, F1), where `f1[w][v]` selects edges from `w` to `v`.
/// Relations survive at vertices of S that keep every in-edge.
pub fn subgraph_restrict(
    g: &RelativeGraph,
    f0: &VertexSet,
    f1: &[Vec<Multiplicity>],
) -> Result<Restricted, GraphError> {
    let n = g.vertex_count();
    g.check_vertices(f0)?;
    if f1.len() != n {
        return Err(GraphError::NotSquare { row: f1.len(), len: 0, n });
    }
    for (w, row) in f1.iter().enumerate() {
        if row.len() != n {
            return Err(GraphError::NotSquare { row: w, len: row.len(), n });
        }
        for (v, &k) in row.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            if k > g.mult(w, v) {
                return Err(GraphError::OverSelected { src: w, dst: v });
            }
            if !f0.contains(w) || !f0.contains(v) {
                return Err(GraphError::EdgeOutsideSubgraph { src: w, dst: v });
            }
        }
    }
    let original: Vec<Vertex> = f0.iter().collect();
    let rows = original
        .iter()
        .map(|&w| original.iter().map(|&v| f1[w][v]).collect())
        .collect();
    let keeps_all = |v: Vertex| (0..n).all(|w| f1[w][v] == g.mult(w, v));
    let s = original
        .iter()
        .enumerate()
        .filter(|&(_, &v)| g.in_relations(v) && keeps_all(v))
        .map(|(i, _)| i)
        .collect();
    let graph = RelativeGraph::new(rows, s)?;
    Ok(Restricted { graph, original })
}

/// Induced subgraph on `f0` with all edges between its vertices.
pub(crate) fn induced(g: &RelativeGraph, f0: &VertexSet, relations: &VertexSet) -> Restricted {
    let original: Vec<Vertex> = f0.iter().collect();
    let rows = original
        .iter()
        .map(|&w| original.iter().map(|&v| g.mult(w, v)).collect())
        .collect();
    let s = original
        .iter()
        .enumerate()
        .filter(|&(_, &v)| relations.contains(v))
        .map(|(i, _)| i)
        .collect();
    let graph = RelativeGraph::new(rows, s).expect("relations regular in the induced graph");
    Restricted { graph, original }
}

/// No vertex lies on a cycle.
pub fn is_af(g: &RelativeGraph) -> bool {
    let c = classify_cycles(g);
    c.c1().is_empty() && c.c2().is_empty()
}
