use serde::{Deserialize, Serialize};

use super::paths::counts_with;
use super::RelativeGraph;
use crate::ext_nat::{ExtNat, Multiplicity};
use crate::vertex_set::{Vertex, VertexSet};

/// Number of first-return paths at a vertex: none, exactly one, or more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CycleClass {
    C0,
    C1,
    C2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClasses {
    classes: Vec<CycleClass>,
}

impl CycleClasses {
    pub fn class(&self, v: Vertex) -> CycleClass {
        self.classes[v]
    }

    pub fn of(&self, class: CycleClass) -> VertexSet {
        (0..self.classes.len()).filter(|&v| self.classes[v] == class).collect()
    }

    pub fn c0(&self) -> VertexSet {
        self.of(CycleClass::C0)
    }

    pub fn c1(&self) -> VertexSet {
        self.of(CycleClass::C1)
    }

    pub fn c2(&self) -> VertexSet {
        self.of(CycleClass::C2)
    }

    /// C2 together with the C1 vertices that are not rigid: outside S or
    /// receiving more than one edge.
    pub fn infinite_set(&self, g: &RelativeGraph) -> VertexSet {
        (0..self.classes.len())
            .filter(|&v| match self.classes[v] {
                CycleClass::C2 => true,
                CycleClass::C1 => !g.in_relations(v) || g.in_degree(v) > ExtNat::one(),
                CycleClass::C0 => false,
            })
            .collect()
    }
}

/// Paths from each vertex back to `v` that avoid `v` before the end.
fn returns_to(g: &RelativeGraph, v: Vertex) -> Vec<ExtNat> {
    let mult = |a: Vertex, b: Vertex| if a == v { Multiplicity::ZERO } else { g.mult(a, b) };
    counts_with(g.vertex_count(), &mult, &VertexSet::singleton(v))
}

pub(crate) fn first_return_count(g: &RelativeGraph, v: Vertex) -> ExtNat {
    let back = returns_to(g, v);
    (0..g.vertex_count()).map(|y| back[y].mul_mult(g.mult(v, y))).sum()
}

pub fn classify_cycles(g: &RelativeGraph) -> CycleClasses {
    let classes = (0..g.vertex_count())
        .map(|v| match first_return_count(g, v).saturate(2) {
            0 => CycleClass::C0,
            1 => CycleClass::C1,
            _ => CycleClass::C2,
        })
        .collect();
    CycleClasses { classes }
}

/// The unique first-return cycle at a C1 vertex, as the vertex sequence
/// starting with `w`. `None` unless `w` is in C1.
pub fn first_return_cycle(g: &RelativeGraph, w: Vertex) -> Option<Vec<Vertex>> {
    if first_return_count(g, w) != ExtNat::one() {
        return None;
    }
    let back = returns_to(g, w);
    let mut cycle = vec![w];
    let mut cur = w;
    loop {
        let next = (0..g.vertex_count())
            .find(|&y| !back[y].mul_mult(g.mult(cur, y)).is_zero())
            .expect("a return path continues");
        if next == w {
            return Some(cycle);
        }
        cycle.push(next);
        cur = next;
    }
}
