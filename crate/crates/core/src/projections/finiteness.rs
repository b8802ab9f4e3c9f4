use serde::{Deserialize, Serialize};

use super::{Model, ModelError};
use crate::graph::{backward_reach, classify_cycles, forward_reach, RelativeGraph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Finiteness {
    Finite,
    Infinite,
}

/// Vertices whose projections feed p_{V,X}: V-vertices with nothing removed
/// and sources of in-edges that were not removed.
fn seeds(g: &RelativeGraph, m: &Model) -> VertexSet {
    let mut w0 = VertexSet::new();
    for v in m.vertices() {
        if !m.has_removed(v) {
            w0.insert(v);
            continue;
        }
        for w in 0..g.vertex_count() {
            if crate::Multiplicity::Fin(m.removed_count(v, w)) < g.mult(w, v) {
                w0.insert(w);
            }
        }
    }
    w0
}

/// Infinite iff some vertex of the infinite set emits a path into the seeds.
/// Finite means stably finite in every quotient.
pub fn infinite_model(g: &RelativeGraph, m: &Model) -> Result<Finiteness, ModelError> {
    m.validate(g)?;
    let inf = classify_cycles(g).infinite_set(g);
    let w0 = seeds(g, m);
    Ok(if backward_reach(g, &w0).intersects(&inf) {
        Finiteness::Infinite
    } else {
        Finiteness::Finite
    })
}

/// Precomputed finiteness test for many models over one graph.
#[derive(Debug, Clone)]
pub struct FiniteTest {
    downstream: VertexSet,
}

impl FiniteTest {
    pub fn new(g: &RelativeGraph) -> Self {
        let inf = classify_cycles(g).infinite_set(g);
        FiniteTest { downstream: forward_reach(g, &inf) }
    }

    /// Caller guarantees `m` is valid for `g`.
    pub fn test(&self, g: &RelativeGraph, m: &Model) -> Finiteness {
        if seeds(g, m).intersects(&self.downstream) {
            Finiteness::Infinite
        } else {
            Finiteness::Finite
        }
    }
}
