//! Semiprojectivity verdicts and the analyses built on them.

mod amplified;
mod census;
mod extensions;
mod witness;

pub use amplified::{amplified_semiprojective, NotAmplified};
pub use census::{census, matrix_at, CensusEntry, CensusError, CensusReport};
pub use extensions::{extension_safe, star_pairs};
pub use witness::{
    corner_semiprojective, one_ideal_check, subquotient_witness, OneIdealError, OneIdealReport,
    SubquotientTag, SubquotientWitness,
};

use serde::Serialize;

use crate::graph::{forward_reach, induced, strict_forward_reach, RelativeGraph};
use crate::ideals::AdmissiblePair;
use crate::projections::{properly_infinite, FqWitness, PiVerdict, WitnessKind};
use crate::vertex_set::{Vertex, VertexSet};

/// Shape of the quotient that keeps the obstruction finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CornerType {
    /// Matrices over C(T), from a (TQ) witness.
    TorusAlgebra,
    /// Matrices over C, inside an AF quotient, from an (MQ) witness.
    MatrixAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub v: Vertex,
    pub omega: VertexSet,
    pub witness: FqWitness,
    pub quotient_pair: AdmissiblePair,
    pub corner_type: CornerType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub semiprojective: bool,
    pub obstructions: Vec<Obstruction>,
}

/// Vertices emitting infinitely many edges into `v`.
pub fn omega(g: &RelativeGraph, v: Vertex) -> VertexSet {
    g.omega(v)
}

/// Semiprojective iff p_{Ω_v} is properly infinite for every vertex v.
pub fn is_semiprojective(g: &RelativeGraph) -> Verdict {
    let mut obstructions = Vec::new();
    for v in 0..g.vertex_count() {
        let om = g.omega(v);
        if om.is_empty() {
            continue;
        }
        let (verdict, trace) = properly_infinite(g, &om);
        if verdict == PiVerdict::Pi {
            continue;
        }
        let witness = trace.witness().expect("failed search has a witness").clone();
        let (quotient_pair, corner_type) = obstruction_pair(g, &witness);
        obstructions.push(Obstruction { v, omega: om, witness, quotient_pair, corner_type });
    }
    Verdict { semiprojective: obstructions.is_empty(), obstructions }
}

/// Quotient in which the image of p_{Ω_v} is nonzero and stably finite:
/// everything not below the witness is divided out, and the relations are
/// imposed at every vertex where the quotient graph allows them.
pub fn obstruction_pair(g: &RelativeGraph, witness: &FqWitness) -> (AdmissiblePair, CornerType) {
    let w = VertexSet::singleton(witness.w);
    let (below, kind) = match witness.kind {
        WitnessKind::TQ => (strict_forward_reach(g, &w), CornerType::TorusAlgebra),
        WitnessKind::MQ => (forward_reach(g, &w), CornerType::MatrixAlgebra),
    };
    let h = g.vertices().difference(&below);
    let q = induced(g, &below, &VertexSet::new());
    let mut r = h.clone();
    for v in q.graph.regular_vertices() {
        r.insert(q.original[v]);
    }
    if witness.kind == WitnessKind::MQ {
        r.remove(witness.w);
    }
    (AdmissiblePair::new(h, r), kind)
}
