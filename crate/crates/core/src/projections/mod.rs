//! Model projections p_{V,X}, their finiteness and proper infiniteness.

mod corner;
mod finiteness;
mod fq;

pub use corner::{corner_graph, h_model, model_properly_infinite, project_model_to_quotient};
pub use finiteness::{infinite_model, FiniteTest, Finiteness};
pub use fq::{
    find_fq, fq_witness, get_top, properly_infinite, FindFqTrace, FqOutcome, FqStep, FqWitness,
    PiVerdict, TraceRow, WitnessKind,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, RelativeGraph};
use crate::ideals::PairViolation;
use crate::vertex_set::{Vertex, VertexSet};

/// Removed in-edges at one vertex: source -> number of edges.
pub type Selection = BTreeMap<Vertex, u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("edges removed at vertex {0}, which is not in V")]
    RemovedOutsideV(Vertex),
    #[error("more edges {src}->{dst} removed than the graph has")]
    OverSelected { src: Vertex, dst: Vertex },
    #[error("every in-edge of {0} removed although {0} is in S")]
    FullAtRelation(Vertex),
    #[error("model syntax: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("R contains {0}, which is not in C2")]
    RNotInC2(Vertex),
    #[error("p_V is properly infinite; there is no (FQ) witness")]
    ProperlyInfinite,
    #[error("corner hypothesis fails at {vertex}: {reason}")]
    CornerHypothesis { vertex: Vertex, reason: &'static str },
    #[error("invalid admissible pair: {0}")]
    InvalidPair(PairViolation),
}

/// p_{V,X} = sum over v in V of p_v minus the range projections of X_v.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Model {
    #[serde(rename = "V")]
    vertices: VertexSet,
    #[serde(rename = "X", default)]
    removed: BTreeMap<Vertex, Selection>,
}

impl Model {
    /// p_V: no edges removed.
    pub fn of_vertices(vertices: VertexSet) -> Self {
        Model { vertices, removed: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Model::default()
    }

    pub fn new(
        g: &RelativeGraph,
        vertices: VertexSet,
        removed: BTreeMap<Vertex, Selection>,
    ) -> Result<Self, ModelError> {
        let removed = removed
            .into_iter()
            .map(|(v, sel)| (v, sel.into_iter().filter(|&(_, k)| k > 0).collect::<Selection>()))
            .filter(|(_, sel)| !sel.is_empty())
            .collect();
        let m = Model { vertices, removed };
        m.validate(g)?;
        Ok(m)
    }

    pub fn validate(&self, g: &RelativeGraph) -> Result<(), ModelError> {
        let n = g.vertex_count();
        if let Some(v) = self.vertices.iter().find(|&v| v >= n) {
            return Err(ModelError::VertexOutOfRange(v));
        }
        for (&v, sel) in &self.removed {
            if !self.vertices.contains(v) {
                return Err(ModelError::RemovedOutsideV(v));
            }
            for (&w, &k) in sel {
                if w >= n {
                    return Err(ModelError::VertexOutOfRange(w));
                }
                if crate::Multiplicity::Fin(k) > g.mult(w, v) {
                    return Err(ModelError::OverSelected { src: w, dst: v });
                }
            }
            if g.in_relations(v) && self.is_full(g, v) {
                return Err(ModelError::FullAtRelation(v));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn removed(&self, v: Vertex) -> Option<&Selection> {
        self.removed.get(&v)
    }

    pub fn removed_entries(&self) -> &BTreeMap<Vertex, Selection> {
        &self.removed
    }

    pub fn removed_count(&self, v: Vertex, w: Vertex) -> u64 {
        self.removed.get(&v).and_then(|s| s.get(&w)).copied().unwrap_or(0)
    }

    pub fn has_removed(&self, v: Vertex) -> bool {
        self.removed.contains_key(&v)
    }

    /// Total number of removed edges.
    pub fn removed_total(&self) -> u64 {
        self.removed.values().flat_map(|s| s.values()).sum()
    }

    /// X_v is every in-edge of v.
    pub fn is_full(&self, g: &RelativeGraph, v: Vertex) -> bool {
        (0..g.vertex_count()).all(|w| crate::Multiplicity::Fin(self.removed_count(v, w)) == g.mult(w, v))
    }

    /// Parses `0,1;1<0*2;1<1`: the vertices of V, then removed edges as
    /// `range<source` with an optional `*count`.
    pub fn parse(g: &RelativeGraph, text: &str) -> Result<Self, ModelError> {
        let bad = |t: &str| ModelError::Syntax(format!("bad token `{t}`"));
        let mut parts = text.split(';');
        let head = parts.next().unwrap_or("").trim();
        let mut vertices = VertexSet::new();
        for t in head.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            vertices.insert(t.parse().map_err(|_| bad(t))?);
        }
        let mut removed: BTreeMap<Vertex, Selection> = BTreeMap::new();
        for part in parts.map(str::trim).filter(|t| !t.is_empty()) {
            let (edge, count) = match part.split_once('*') {
                Some((e, c)) => (e, c.trim().parse::<u64>().map_err(|_| bad(part))?),
                None => (part, 1),
            };
            let (v, w) = edge.split_once('<').ok_or_else(|| bad(part))?;
            let v: Vertex = v.trim().parse().map_err(|_| bad(part))?;
            let w: Vertex = w.trim().parse().map_err(|_| bad(part))?;
            *removed.entry(v).or_default().entry(w).or_default() += count;
        }
        Model::new(g, vertices, removed)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", vs.join(","))?;
        for (v, sel) in &self.removed {
            for (w, k) in sel {
                if *k == 1 {
                    write!(f, ";{v}<{w}")?;
                } else {
                    write!(f, ";{v}<{w}*{k}")?;
                }
            }
        }
        Ok(())
    }
}
