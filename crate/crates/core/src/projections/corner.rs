use std::collections::BTreeMap;

use super::{properly_infinite, Model, PiVerdict, ProjectionError, Selection};
use crate::ext_nat::Multiplicity;
use crate::graph::{subgraph_restrict, Restricted, RelativeGraph};
use crate::ideals::{quotient_graph, validate_admissible_pair, AdmissiblePair};
use crate::vertex_set::VertexSet;

/// Replaces m by a model whose fully kept vertices form a hereditary set H,
/// with every other vertex removing exactly its in-edges from outside H.
/// The two projections dominate each other up to multiples.
pub fn h_model(g: &RelativeGraph, m: &Model) -> Result<Model, ProjectionError> {
    m.validate(g)?;
    let n = g.vertex_count();
    let mut h = VertexSet::new();
    for v in m.vertices() {
        if !m.has_removed(v) {
            h.insert(v);
        } else {
            for w in 0..n {
                if Multiplicity::Fin(m.removed_count(v, w)) < g.mult(w, v) {
                    h.insert(w);
                }
            }
        }
    }
    loop {
        let mut next = h.clone();
        for v in m.vertices() {
            if let Some(sel) = m.removed(v) {
                if sel.keys().all(|&w| h.contains(w)) {
                    next.insert(v);
                }
            }
        }
        for x in &h {
            next.extend(g.in_neighbors(x));
        }
        if next == h {
            break;
        }
        h = next;
    }
    let vertices = m.vertices().union(&h);
    let mut removed = BTreeMap::new();
    for v in vertices.difference(&h) {
        let sel: Selection = (0..n)
            .filter(|&w| !h.contains(w) && !g.mult(w, v).is_zero())
            .map(|w| (w, g.mult(w, v).as_finite().expect("unremoved edges come from H")))
            .collect();
        removed.insert(v, sel);
    }
    Ok(Model::new(g, vertices, removed)?)
}

/// The graph F whose relative graph algebra is the corner cut down by p_m,
/// with relations S ∩ V.
/// Requires the fully kept vertices H of m to be hereditary and every other
/// vertex of m to remove exactly its in-edges from outside H.
pub fn corner_graph(g: &RelativeGraph, m: &Model) -> Result<Restricted, ProjectionError> {
    m.validate(g)?;
    let n = g.vertex_count();
    let h: VertexSet = m.vertices().iter().filter(|&v| !m.has_removed(v)).collect();
    for x in &h {
        if g.in_neighbors(x).any(|w| !h.contains(w)) {
            return Err(ProjectionError::CornerHypothesis {
                vertex: x,
                reason: "H is not hereditary",
            });
        }
    }
    for v in m.vertices().difference(&h) {
        for w in 0..n {
            let k = m.removed_count(v, w);
            if h.contains(w) && k > 0 {
                return Err(ProjectionError::CornerHypothesis {
                    vertex: v,
                    reason: "an in-edge from H is removed",
                });
            }
            if !h.contains(w) && Multiplicity::Fin(k) != g.mult(w, v) {
                return Err(ProjectionError::CornerHypothesis {
                    vertex: v,
                    reason: "an in-edge from outside H is kept",
                });
            }
        }
    }
    let mut f1 = vec![vec![Multiplicity::ZERO; n]; n];
    for w in &h {
        for v in m.vertices() {
            f1[w][v] = g.mult(w, v);
        }
    }
    // a vertex of V outside H keeps its relation: in the corner its
    // projection is the sum over the in-edges from H
    let mut f = subgraph_restrict(g, m.vertices(), &f1)?;
    let relations = (0..f.original.len()).filter(|&i| g.in_relations(f.original[i])).collect();
    f.graph = f.graph.with_relations(relations)?;
    Ok(f)
}

/// Proper infiniteness of p_{V,X} through its corner.
pub fn model_properly_infinite(g: &RelativeGraph, m: &Model) -> Result<PiVerdict, ProjectionError> {
    let reduced = h_model(g, m)?;
    let f = corner_graph(g, &reduced)?;
    Ok(properly_infinite(&f.graph, &f.graph.vertices()).0)
}

/// The image of p_{V,X} in the quotient by the ideal of `ap`, as a model
/// over the quotient graph. Vertices whose image vanishes are dropped.
pub fn project_model_to_quotient(
    g: &RelativeGraph,
    m: &Model,
    ap: &AdmissiblePair,
) -> Result<(Restricted, Model), ProjectionError> {
    m.validate(g)?;
    validate_admissible_pair(g, ap).map_err(ProjectionError::InvalidPair)?;
    let q = quotient_graph(g, ap).map_err(ProjectionError::InvalidPair)?;
    let mut vertices = VertexSet::new();
    let mut removed = BTreeMap::new();
    for v in m.vertices().difference(&ap.h) {
        let lv = q.local(v).expect("survives");
        let sel: Selection = m
            .removed(v)
            .into_iter()
            .flatten()
            .filter(|(&w, _)| !ap.h.contains(w))
            .map(|(&w, &k)| (q.local(w).expect("survives"), k))
            .collect();
        let full = (0..q.graph.vertex_count())
            .all(|w| Multiplicity::Fin(sel.get(&w).copied().unwrap_or(0)) == q.graph.mult(w, lv));
        if full && q.graph.in_relations(lv) {
            continue;
        }
        vertices.insert(lv);
        if !sel.is_empty() {
            removed.insert(lv, sel);
        }
    }
    let model = Model::new(&q.graph, vertices, removed)?;
    Ok((q, model))
}
