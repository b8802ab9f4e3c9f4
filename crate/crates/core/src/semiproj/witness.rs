use serde::Serialize;
use thiserror::Error;

use super::is_semiprojective;
use crate::ext_nat::Multiplicity;
use crate::graph::{backward_reach, classify_cycles, forward_reach, is_af, RelativeGraph};
use crate::ideals::{
    enumerate_admissible_pairs, ideal_unitization_graph, quotient_graph, validate_admissible_pair,
    AdmissiblePair, DEFAULT_TAIL_CAP,
};
use crate::projections::{corner_graph, h_model, Model, ProjectionError, WitnessKind};
use crate::vertex_set::VertexSet;

/// Semiprojectivity of the corner cut down by p_m.
pub fn corner_semiprojective(g: &RelativeGraph, m: &Model) -> Result<bool, ProjectionError> {
    let reduced = h_model(g, m)?;
    let f = corner_graph(g, &reduced)?;
    Ok(is_semiprojective(&f.graph).semiprojective)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubquotientTag {
    /// Unitized compacts.
    Ktilde,
    /// Unitized stabilized circle algebra.
    CTKtilde,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubquotientWitness {
    pub i: AdmissiblePair,
    pub j: AdmissiblePair,
    pub tag: SubquotientTag,
    /// J/I has one of the two canonical two-vertex graphs, matching the tag.
    pub shape_verified: bool,
}

fn canonical_shape(g: &RelativeGraph, tag: SubquotientTag) -> bool {
    if g.vertex_count() != 2 {
        return false;
    }
    let (inf, loop_at_a, relations) = match tag {
        SubquotientTag::Ktilde => (Multiplicity::Inf, Multiplicity::ZERO, VertexSet::new()),
        SubquotientTag::CTKtilde => (Multiplicity::Inf, Multiplicity::Fin(1), VertexSet::singleton(0)),
    };
    let target = RelativeGraph::new(
        vec![vec![loop_at_a, inf], vec![Multiplicity::ZERO, Multiplicity::ZERO]],
        relations,
    )
    .expect("canonical shape");
    g == &target || g.permuted(&[1, 0]) == target
}

/// Nested pairs I ⊆ J around the first obstruction, with J/I expected to be
/// Morita equivalent to the tagged algebra. None when g is semiprojective.
pub fn subquotient_witness(g: &RelativeGraph) -> Option<SubquotientWitness> {
    let verdict = is_semiprojective(g);
    let o = verdict.obstructions.first()?;
    let i = o.quotient_pair.clone();
    let w = o.witness.w;
    let mut core = forward_reach(g, &VertexSet::singleton(w)).intersection(&backward_reach(g, &o.omega));
    core.insert(o.v);
    core.extend(o.witness.cycle.iter().copied());

    let mut h = backward_reach(g, &core.union(&i.h));
    loop {
        let stuck: Vec<_> = i
            .r
            .difference(&h)
            .iter()
            .filter(|&v| g.in_neighbors(v).all(|x| h.contains(x)))
            .collect();
        if stuck.is_empty() {
            break;
        }
        h.extend(stuck);
        h = backward_reach(g, &h);
    }
    let r = h.union(&i.r);
    let j = AdmissiblePair::new(h, r);
    debug_assert_eq!(validate_admissible_pair(g, &j), Ok(()));

    let tag = match o.witness.kind {
        WitnessKind::MQ => SubquotientTag::Ktilde,
        WitnessKind::TQ => SubquotientTag::CTKtilde,
    };
    let shape_verified = quotient_graph(g, &i).ok().is_some_and(|q| {
        let local = AdmissiblePair::new(q.to_local(&j.h.difference(&i.h)), q.to_local(&j.r.difference(&i.h)));
        if local.h.len() == q.graph.vertex_count() {
            canonical_shape(&q.graph, tag)
        } else {
            ideal_unitization_graph(&q.graph, &local, DEFAULT_TAIL_CAP)
                .is_ok_and(|u| canonical_shape(&u.graph, tag))
        }
    });
    Some(SubquotientWitness { i, j, tag, shape_verified })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OneIdealError {
    #[error("S must be the set of regular vertices")]
    RelationsNotRegular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneIdealReport {
    pub ideal_count: usize,
    /// Exactly one proper nonzero gauge-invariant ideal.
    pub applicable: bool,
    pub af: bool,
    pub semiprojective: bool,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// With a single proper ideal, semiprojective exactly when not AF.
pub fn one_ideal_check(g: &RelativeGraph) -> Result<OneIdealReport, OneIdealError> {
    if g.relations() != &g.regular_vertices() {
        return Err(OneIdealError::RelationsNotRegular);
    }
    let ideal_count = enumerate_admissible_pairs(g).len();
    let applicable = ideal_count == 3;
    let af = is_af(g);
    let semiprojective = is_semiprojective(g).semiprojective;
    let has_cycles = !classify_cycles(g).c0().eq(&g.vertices());
    Ok(OneIdealReport {
        ideal_count,
        applicable,
        af,
        semiprojective,
        consistent: !applicable || semiprojective != af,
        warning: has_cycles
            .then(|| "graph has cycles; gauge invariance of every ideal is not checked".to_string()),
    })
}
