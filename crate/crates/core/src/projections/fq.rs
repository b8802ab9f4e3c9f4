use std::fmt;

use serde::{Deserialize, Serialize};

use super::ProjectionError;
use crate::ext_nat::ExtNat;
use crate::graph::{
    backward_reach, classify_cycles, count_paths, first_return_cycle, forward_reach, CycleClass,
    CycleClasses, PathQuery, RelativeGraph,
};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PiVerdict {
    #[serde(rename = "PI")]
    Pi,
    #[serde(rename = "NotPI")]
    NotPi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    /// Unique first-return cycle at w.
    TQ,
    /// w outside S with finitely many paths into V.
    MQ,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FqWitness {
    pub kind: WitnessKind,
    pub w: Vertex,
    /// MQ: paths from w into V. TQ: such paths not starting with the full
    /// first-return cycle.
    pub path_count: ExtNat,
    pub first_return_present: bool,
    /// TQ: vertices of the first-return cycle starting at w.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cycle: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub m: usize,
    #[serde(rename = "V")]
    pub v: VertexSet,
    #[serde(rename = "W")]
    pub w: VertexSet,
    #[serde(rename = "R")]
    pub r: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FqOutcome {
    ProperlyInfinite,
    FQFound(FqWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FindFqTrace {
    pub rows: Vec<TraceRow>,
    pub outcome: FqOutcome,
}

impl FindFqTrace {
    pub fn verdict(&self) -> PiVerdict {
        match self.outcome {
            FqOutcome::ProperlyInfinite => PiVerdict::Pi,
            FqOutcome::FQFound(_) => PiVerdict::NotPi,
        }
    }

    pub fn witness(&self) -> Option<&FqWitness> {
        match &self.outcome {
            FqOutcome::FQFound(w) => Some(w),
            FqOutcome::ProperlyInfinite => None,
        }
    }

    /// Text table with columns m, V_m, W_m, R_m.
    pub fn to_table(&self) -> String {
        let show = |s: &VertexSet| if s.is_empty() { "∅".to_string() } else { s.to_string() };
        let mut cells = vec![["m".to_string(), "V_m".into(), "W_m".into(), "R_m".into()]];
        for r in &self.rows {
            cells.push([r.m.to_string(), show(&r.v), show(&r.w), show(&r.r)]);
        }
        let widths: Vec<usize> = (0..4)
            .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
            if i == 0 {
                let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                out.push_str(&rule.join("-+-"));
                out.push('\n');
            }
        }
        out.push_str(&format!("outcome: {}\n", self.outcome));
        out
    }
}

impl fmt::Display for FqOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FqOutcome::ProperlyInfinite => write!(f, "properly infinite"),
            FqOutcome::FQFound(w) => write!(f, "{:?} at {} (path count {})", w.kind, w.w, w.path_count),
        }
    }
}

/// One step of the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FqStep {
    /// Some vertex of `top` lies in C1 or in C0 outside S.
    Star { pruned: VertexSet, top: VertexSet },
    Next { pruned: VertexSet, top: VertexSet, v: VertexSet, r: VertexSet },
}

impl FqStep {
    pub fn top(&self) -> &VertexSet {
        match self {
            FqStep::Star { top, .. } | FqStep::Next { top, .. } => top,
        }
    }
}

fn reach_rows(g: &RelativeGraph) -> Vec<VertexSet> {
    (0..g.vertex_count())
        .map(|v| forward_reach(g, &VertexSet::singleton(v)))
        .collect()
}

fn top_with(reach: &[VertexSet], v_set: &VertexSet) -> VertexSet {
    let mut top = VertexSet::new();
    for v in v_set {
        if top.iter().any(|w| reach[v].contains(w)) {
            continue;
        }
        top = top.iter().filter(|&w| !reach[w].contains(v)).collect();
        top.insert(v);
    }
    top
}

/// An antichain W in V under reachability such that every vertex of V
/// reaches W.
pub fn get_top(g: &RelativeGraph, v_set: &VertexSet) -> VertexSet {
    top_with(&reach_rows(g), v_set)
}

fn blocking(g: &RelativeGraph, classes: &CycleClasses, top: &VertexSet) -> Option<Vertex> {
    top.iter().find(|&w| match classes.class(w) {
        CycleClass::C1 => true,
        CycleClass::C0 => !g.in_relations(w),
        CycleClass::C2 => false,
    })
}

fn step_with(
    g: &RelativeGraph,
    classes: &CycleClasses,
    reach: &[VertexSet],
    v_set: &VertexSet,
    r: &VertexSet,
) -> FqStep {
    let pruned = v_set.difference(&backward_reach(g, r));
    let top = top_with(reach, &pruned);
    if blocking(g, classes, &top).is_some() {
        return FqStep::Star { pruned, top };
    }
    let c2 = classes.c2();
    let targets = top.difference(&c2);
    let next: VertexSet = (0..g.vertex_count())
        .filter(|&u| targets.iter().any(|x| !g.mult(u, x).is_zero()))
        .collect();
    let r_next = r.union(&pruned.intersection(&c2));
    FqStep::Next { pruned, top, v: next, r: r_next }
}

/// One FindFQ step from (V, R).
pub fn find_fq(g: &RelativeGraph, v_set: &VertexSet, r: &VertexSet) -> Result<FqStep, ProjectionError> {
    g.check_vertices(v_set)?;
    g.check_vertices(r)?;
    let classes = classify_cycles(g);
    if let Some(x) = r.iter().find(|&x| classes.class(x) != CycleClass::C2) {
        return Err(ProjectionError::RNotInC2(x));
    }
    Ok(step_with(g, &classes, &reach_rows(g), v_set, r))
}

/// Iterates FindFQ from (V, {}) until V is empty or a step is blocked.
pub fn properly_infinite(g: &RelativeGraph, v_set: &VertexSet) -> (PiVerdict, FindFqTrace) {
    let classes = classify_cycles(g);
    let reach = reach_rows(g);
    let mut rows = Vec::new();
    let mut cur = v_set.clone();
    let mut r = VertexSet::new();
    for m in 0.. {
        if cur.is_empty() {
            rows.push(TraceRow { m, v: cur, w: VertexSet::new(), r });
            let trace = FindFqTrace { rows, outcome: FqOutcome::ProperlyInfinite };
            return (PiVerdict::Pi, trace);
        }
        debug_assert!(m <= (g.vertex_count() + 1) * (g.vertex_count() + 1), "FindFQ loops");
        match step_with(g, &classes, &reach, &cur, &r) {
            FqStep::Star { top, .. } => {
                let w = blocking(g, &classes, &top).expect("blocked step has a witness");
                rows.push(TraceRow { m, v: cur, w: top, r });
                let witness = witness_at(g, &classes, v_set, w);
                let trace = FindFqTrace { rows, outcome: FqOutcome::FQFound(witness) };
                return (PiVerdict::NotPi, trace);
            }
            FqStep::Next { top, v, r: r_next, .. } => {
                rows.push(TraceRow { m, v: cur, w: top, r });
                cur = v;
                r = r_next;
            }
        }
    }
    unreachable!()
}

fn witness_at(g: &RelativeGraph, classes: &CycleClasses, v_set: &VertexSet, w: Vertex) -> FqWitness {
    if classes.class(w) == CycleClass::C1 {
        let cycle = first_return_cycle(g, w).expect("C1 vertex has a cycle");
        FqWitness {
            kind: WitnessKind::TQ,
            w,
            path_count: paths_avoiding_cycle(g, &cycle, v_set),
            first_return_present: true,
            cycle,
        }
    } else {
        FqWitness {
            kind: WitnessKind::MQ,
            w,
            path_count: count_paths(g, w, v_set, &PathQuery::any()),
            first_return_present: false,
            cycle: Vec::new(),
        }
    }
}

/// Paths from the cycle's base into `v_set` that do not run through the
/// whole cycle first: walk part of the cycle, then stop or leave it.
fn paths_avoiding_cycle(g: &RelativeGraph, cycle: &[Vertex], v_set: &VertexSet) -> ExtNat {
    let k = cycle.len();
    let mut total = ExtNat::zero();
    for (j, &u) in cycle.iter().enumerate() {
        if v_set.contains(u) {
            total = total + ExtNat::one();
        }
        let along = cycle[(j + 1) % k];
        for x in 0..g.vertex_count() {
            let mut m = g.mult(u, x);
            if x == along {
                m = match m {
                    crate::Multiplicity::Fin(c) => crate::Multiplicity::Fin(c - 1),
                    inf => inf,
                };
            }
            if !m.is_zero() {
                total = total + count_paths(g, x, v_set, &PathQuery::any()).mul_mult(m);
            }
        }
    }
    total
}

/// The (TQ)/(MQ) witness located by a failed search.
pub fn fq_witness(g: &RelativeGraph, v_set: &VertexSet) -> Result<FqWitness, ProjectionError> {
    g.check_vertices(v_set)?;
    match properly_infinite(g, v_set).1.outcome {
        FqOutcome::FQFound(w) => Ok(w),
        FqOutcome::ProperlyInfinite => Err(ProjectionError::ProperlyInfinite),
    }
}
