//! Gauge-invariant ideals as admissible pairs (H, R), quotients, and the
//! graph presentation of an ideal's unitization.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ext_nat::{ExtNat, Multiplicity};
use crate::graph::{backward_reach, count_paths, PathQuery, RelativeGraph, Restricted};
use crate::semiproj::is_semiprojective;
use crate::vertex_set::{Vertex, VertexSet};

/// The ideal generated by p_v for v in H and by the gap projections at
/// vertices of R outside H. The quotient is C*(E \ H, R \ H).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissiblePair {
    #[serde(rename = "H")]
    pub h: VertexSet,
    #[serde(rename = "R")]
    pub r: VertexSet,
}

impl AdmissiblePair {
    pub fn new(h: VertexSet, r: VertexSet) -> Self {
        AdmissiblePair { h, r }
    }

    /// Componentwise inclusion, which is inclusion of ideals.
    pub fn contains(&self, other: &AdmissiblePair) -> bool {
        other.h.is_subset(&self.h) && other.r.is_subset(&self.r)
    }

    fn key(&self) -> (Vec<Vertex>, Vec<Vertex>) {
        (self.h.iter().collect(), self.r.iter().collect())
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(H={}, R={})", self.h, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
pub enum PairViolation {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("{0} is in H but not in R")]
    HNotInR(Vertex),
    #[error("H is not hereditary: {from} -> {vertex} enters H from outside")]
    NotHereditary { vertex: Vertex, from: Vertex },
    #[error("{0} is in R, receives only from H, but is not in H")]
    NotSaturated(Vertex),
    #[error("{0} is in R but receives infinitely many edges from outside H")]
    InfiniteInflow(Vertex),
    #[error("{0} is in S but not in R")]
    RelationNotInR(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("invalid admissible pair: {0}")]
    InvalidPair(#[from] PairViolation),
    #[error("vertex {0} is neither in H nor in R \\ S")]
    OutOfDomain(Vertex),
    #[error("vertex {vertex} has {count} tail paths, above the cap {cap}")]
    TooManyPaths { vertex: Vertex, count: ExtNat, cap: u64 },
}

/// Edges into `v` from outside `h`.
fn inflow_outside(g: &RelativeGraph, h: &VertexSet, v: Vertex) -> ExtNat {
    (0..g.vertex_count())
        .filter(|&w| !h.contains(w))
        .map(|w| g.mult(w, v).to_ext())
        .sum()
}

pub fn validate_admissible_pair(g: &RelativeGraph, ap: &AdmissiblePair) -> Result<(), PairViolation> {
    let n = g.vertex_count();
    if let Some(v) = ap.h.union(&ap.r).iter().find(|&v| v >= n) {
        return Err(PairViolation::VertexOutOfRange(v));
    }
    if let Some(v) = ap.h.difference(&ap.r).first() {
        return Err(PairViolation::HNotInR(v));
    }
    for v in &ap.h {
        if let Some(w) = g.in_neighbors(v).find(|&w| !ap.h.contains(w)) {
            return Err(PairViolation::NotHereditary { vertex: v, from: w });
        }
    }
    for v in ap.r.difference(&ap.h) {
        let k = inflow_outside(g, &ap.h, v);
        if k.is_zero() {
            return Err(PairViolation::NotSaturated(v));
        }
        if k.is_inf() {
            return Err(PairViolation::InfiniteInflow(v));
        }
    }
    if let Some(v) = g.relations().difference(&ap.r).first() {
        return Err(PairViolation::RelationNotInR(v));
    }
    Ok(())
}

fn hereditary_sets(g: &RelativeGraph) -> Vec<VertexSet> {
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut stack = vec![VertexSet::new()];
    seen.insert(VertexSet::new());
    while let Some(h) = stack.pop() {
        for v in 0..g.vertex_count() {
            if h.contains(v) {
                continue;
            }
            let mut grown = h.clone();
            grown.insert(v);
            let closed = backward_reach(g, &grown);
            if seen.insert(closed.clone()) {
                stack.push(closed);
            }
        }
    }
    seen.into_iter().collect()
}

/// The gauge-invariant ideal lattice, sorted by (H, R) as ascending lists.
pub fn enumerate_admissible_pairs(g: &RelativeGraph) -> Vec<AdmissiblePair> {
    let mut out = BTreeSet::new();
    for h in hereditary_sets(g) {
        let forced = g.relations().difference(&h);
        let admissible = |v: Vertex| {
            let k = inflow_outside(g, &h, v);
            !k.is_zero() && k.is_finite()
        };
        if !forced.iter().all(admissible) {
            continue;
        }
        let optional: Vec<Vertex> = (0..g.vertex_count())
            .filter(|&v| !h.contains(v) && !forced.contains(v) && admissible(v))
            .collect();
        let base = h.union(&forced);
        for mask in 0..1u64 << optional.len() {
            let mut r = base.clone();
            r.extend((0..optional.len()).filter(|i| mask >> i & 1 == 1).map(|i| optional[i]));
            let ap = AdmissiblePair::new(h.clone(), r);
            debug_assert_eq!(validate_admissible_pair(g, &ap), Ok(()));
            out.insert(ap.key());
        }
    }
    out.into_iter()
        .map(|(h, r)| AdmissiblePair::new(h.into_iter().collect(), r.into_iter().collect()))
        .collect()
}

/// C*(E \ H, R \ H) as a graph on the surviving vertices.
pub fn quotient_graph(g: &RelativeGraph, ap: &AdmissiblePair) -> Result<Restricted, PairViolation> {
    validate_admissible_pair(g, ap)?;
    let keep = g.vertices().difference(&ap.h);
    Ok(crate::graph::induced(g, &keep, &ap.r.difference(&ap.h)))
}

/// Number of tail paths attached to `v` in the ideal's graph: for v in H,
/// paths whose first edge leaves H ∪ (R \ S); for other v in R \ S, all
/// paths starting at v.
pub fn eta_count(g: &RelativeGraph, ap: &AdmissiblePair, v: Vertex) -> Result<ExtNat, IdealError> {
    validate_admissible_pair(g, ap)?;
    eta_unchecked(g, ap, v)
}

fn eta_unchecked(g: &RelativeGraph, ap: &AdmissiblePair, v: Vertex) -> Result<ExtNat, IdealError> {
    let gaps = ap.r.difference(g.relations());
    let all = g.vertices();
    if ap.h.contains(v) {
        let q = PathQuery { min_len: 1, exclude_first_edge_into: Some(ap.h.union(&gaps)) };
        Ok(count_paths(g, v, &all, &q))
    } else if gaps.contains(v) {
        Ok(count_paths(g, v, &all, &PathQuery::any()))
    } else {
        Err(IdealError::OutOfDomain(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitLabel {
    /// A vertex of the original graph.
    Vertex(Vertex),
    /// The vertex absorbing infinite tails; it carries the adjoined unit.
    Infinity,
    /// The `index`-th finite tail path of `from`.
    Tail { from: Vertex, index: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitizationGraph {
    pub graph: RelativeGraph,
    pub labels: Vec<UnitLabel>,
}

pub const DEFAULT_TAIL_CAP: u64 = 1_000_000;

/// A graph whose relative graph algebra is the unitization of the ideal.
pub fn ideal_unitization_graph(
    g: &RelativeGraph,
    ap: &AdmissiblePair,
    cap: u64,
) -> Result<UnitizationGraph, IdealError> {
    validate_admissible_pair(g, ap)?;
    let gaps = ap.r.difference(g.relations());
    let core: Vec<Vertex> = ap.h.union(&gaps).iter().collect();
    let mut tails = Vec::with_capacity(core.len());
    let mut fresh = 0u64;
    for &v in &core {
        let eta = eta_unchecked(g, ap, v)?;
        if let Some(k) = eta.to_u64() {
            if fresh.saturating_add(k) > cap {
                return Err(IdealError::TooManyPaths { vertex: v, count: eta, cap });
            }
            fresh += k;
        } else if eta.is_finite() {
            return Err(IdealError::TooManyPaths { vertex: v, count: eta, cap });
        }
        tails.push(eta);
    }

    let d = core.len();
    let size = d + 1 + fresh as usize;
    let mut labels: Vec<UnitLabel> = core.iter().map(|&v| UnitLabel::Vertex(v)).collect();
    labels.push(UnitLabel::Infinity);
    let mut rows = vec![vec![Multiplicity::ZERO; size]; size];
    for (i, &w) in core.iter().enumerate() {
        for (j, &v) in core.iter().enumerate() {
            if ap.h.contains(v) || (ap.h.contains(w) && gaps.contains(v)) {
                rows[i][j] = g.mult(w, v);
            }
        }
    }
    let mut relations: VertexSet = core
        .iter()
        .enumerate()
        .filter(|&(_, &v)| ap.h.contains(v) && g.in_relations(v))
        .map(|(i, _)| i)
        .collect();
    for (i, eta) in tails.iter().enumerate() {
        match eta.to_u64() {
            None => rows[i][d] = Multiplicity::Inf,
            Some(k) => {
                for index in 0..k {
                    let id = labels.len();
                    labels.push(UnitLabel::Tail { from: core[i], index });
                    rows[i][id] = Multiplicity::Fin(1);
                    relations.insert(id);
                }
            }
        }
    }
    let graph = RelativeGraph::new(rows, relations).expect("relations are regular by construction");
    Ok(UnitizationGraph { graph, labels })
}

pub fn ideal_is_semiprojective(g: &RelativeGraph, ap: &AdmissiblePair) -> Result<bool, IdealError> {
    let u = ideal_unitization_graph(g, ap, DEFAULT_TAIL_CAP)?;
    Ok(is_semiprojective(&u.graph).semiprojective)
}
