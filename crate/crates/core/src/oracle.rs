//! The monoid W(E,S): generators ⟨v, X⟩ for X a finite selection of in-edges
//! of v, subject to ⟨v,X⟩ + ⟨s(e)⟩ = ⟨v,X \ {e}⟩ for e in X and ⟨v, all⟩ = 0
//! for v in S. A bounded breadth-first search over the rewriting graph gives
//! sound, incomplete answers to [a] ≤ [b].

use std::collections::BTreeSet;
use std::fmt;

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, Variable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::ext_nat::Multiplicity;
use crate::graph::{backward_reach, RelativeGraph};
use crate::projections::{Model, ModelError};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub v: Vertex,
    /// Removed edges per source, indexed by source vertex.
    pub x: Vec<u64>,
}

impl Generator {
    pub fn vertex(g: &RelativeGraph, v: Vertex) -> Self {
        Generator { v, x: vec![0; g.vertex_count()] }
    }

    fn is_plain(&self) -> bool {
        self.x.iter().all(|&k| k == 0)
    }

    fn is_full(&self, g: &RelativeGraph) -> bool {
        self.x.iter().enumerate().all(|(w, &k)| Multiplicity::Fin(k) == g.mult(w, self.v))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.v)?;
        let mut sep = ";";
        for (w, &k) in self.x.iter().enumerate().filter(|(_, &k)| k > 0) {
            write!(f, "{sep}{w}*{k}")?;
            sep = ",";
        }
        write!(f, ">")
    }
}

/// A sum of generators, kept sorted with zero generators removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonoidElement(pub Vec<Generator>);

impl MonoidElement {
    pub fn zero() -> Self {
        MonoidElement(Vec::new())
    }

    pub fn canonical(g: &RelativeGraph, mut gens: Vec<Generator>) -> Self {
        gens.retain(|x| !(g.in_relations(x.v) && x.is_full(g)));
        gens.sort();
        MonoidElement(gens)
    }

    /// The class of p_{V,X}.
    pub fn of_model(g: &RelativeGraph, m: &Model) -> Result<Self, ModelError> {
        m.validate(g)?;
        let gens = m
            .vertices()
            .iter()
            .map(|v| {
                let mut x = vec![0; g.vertex_count()];
                for (&w, &k) in m.removed(v).into_iter().flatten() {
                    x[w] = k;
                }
                Generator { v, x }
            })
            .collect();
        Ok(MonoidElement::canonical(g, gens))
    }

    pub fn scaled(&self, k: usize) -> Self {
        let mut gens: Vec<Generator> = (0..k).flat_map(|_| self.0.iter().cloned()).collect();
        gens.sort();
        MonoidElement(gens)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_depth: 12, max_states: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OracleAnswer {
    /// The rewrite sequence from b to an element a + c.
    Yes { trace: Vec<MonoidElement> },
    /// No witness found.
    Unknown { reason: UnknownReason, states: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnknownReason {
    /// Depth or state limit reached.
    Budget,
    /// The whole class of b was searched: a definite no.
    ClassExhausted,
    /// An additive invariant separates a from b: a definite no.
    Invariant,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes { .. })
    }
}

type State = Box<[u32]>;

#[derive(Debug, Clone, Copy)]
struct Moves {
    /// Remove one more edge from this source: the new generator and ⟨w⟩.
    split: Option<(Option<u32>, u32)>,
    /// Put back an edge from this source, absorbing ⟨w⟩.
    merge: Option<Option<u32>>,
}

struct Search<'g> {
    g: &'g RelativeGraph,
    ids: FxHashMap<Generator, u32>,
    gens: Vec<Generator>,
    /// Per generator, one entry per source vertex, filled on first use.
    moves: Vec<Option<Box<[Moves]>>>,
    plain_id: Vec<u32>,
    /// Per w, for v in S: ⟨w⟩ = ⟨v, all in-edges but one from w⟩.
    implicit_from: Vec<Vec<Option<u32>>>,
}

impl<'g> Search<'g> {
    fn new(g: &'g RelativeGraph) -> Self {
        let n = g.vertex_count();
        let mut search = Search {
            g,
            ids: FxHashMap::default(),
            gens: Vec::new(),
            moves: Vec::new(),
            plain_id: Vec::new(),
            implicit_from: vec![Vec::new(); n],
        };
        search.plain_id = (0..n).map(|w| search.id(Generator::vertex(g, w))).collect();
        for v in g.relations() {
            let full: Vec<u64> = (0..n)
                .map(|w| g.mult(w, v).as_finite().expect("relations sit at regular vertices"))
                .collect();
            for w in 0..n {
                if full[w] > 0 {
                    let mut x = full.clone();
                    x[w] -= 1;
                    let y = search.intern(Generator { v, x });
                    search.implicit_from[w].push(y);
                }
            }
        }
        search
    }

    fn id(&mut self, x: Generator) -> u32 {
        if let Some(&i) = self.ids.get(&x) {
            return i;
        }
        let i = self.gens.len() as u32;
        self.gens.push(x.clone());
        self.moves.push(None);
        self.ids.insert(x, i);
        i
    }

    /// Interns a generator, or returns None when it is zero.
    fn intern(&mut self, x: Generator) -> Option<u32> {
        if self.g.in_relations(x.v) && x.is_full(self.g) {
            None
        } else {
            Some(self.id(x))
        }
    }

    fn moves_of(&mut self, i: u32) -> Box<[Moves]> {
        if let Some(m) = &self.moves[i as usize] {
            return m.clone();
        }
        let x = self.gens[i as usize].clone();
        let n = self.g.vertex_count();
        let mut out = Vec::with_capacity(n);
        for w in 0..n {
            let split = (Multiplicity::Fin(x.x[w]) < self.g.mult(w, x.v)).then(|| {
                let mut y = x.clone();
                y.x[w] += 1;
                (self.intern(y), self.plain_id[w])
            });
            let merge = (x.x[w] > 0).then(|| {
                let mut y = x.clone();
                y.x[w] -= 1;
                self.intern(y)
            });
            out.push(Moves { split, merge });
        }
        let out = out.into_boxed_slice();
        self.moves[i as usize] = Some(out.clone());
        out
    }

    fn encode(&mut self, e: &MonoidElement) -> State {
        let mut s: Vec<u32> = e.0.iter().filter_map(|x| self.intern(x.clone())).collect();
        s.sort_unstable();
        s.into_boxed_slice()
    }

    fn decode(&self, s: &[u32]) -> MonoidElement {
        let mut gens: Vec<Generator> = s.iter().map(|&i| self.gens[i as usize].clone()).collect();
        gens.sort();
        MonoidElement(gens)
    }

    fn build(state: &[u32], drop: &[u32], add: &[Option<u32>]) -> State {
        let mut out = state.to_vec();
        for d in drop {
            let p = out.iter().position(|x| x == d).expect("dropped generator present");
            out.remove(p);
        }
        out.extend(add.iter().flatten());
        out.sort_unstable();
        out.into_boxed_slice()
    }

    fn neighbors(&mut self, state: &[u32]) -> Vec<State> {
        let n = self.g.vertex_count();
        let mut out = Vec::new();
        let mut distinct: Vec<u32> = state.to_vec();
        distinct.dedup();
        let present = |j: u32| distinct.binary_search(&j).is_ok();
        let has_plain: Vec<bool> = (0..n).map(|w| present(self.plain_id[w])).collect();
        for &i in &distinct {
            let moves = self.moves_of(i);
            for (w, mv) in moves.iter().enumerate() {
                if let Some((y, s)) = mv.split {
                    out.push(Self::build(state, &[i], &[y, Some(s)]));
                }
                if let Some(y) = mv.merge {
                    if has_plain[w] {
                        out.push(Self::build(state, &[i, self.plain_id[w]], &[y]));
                    }
                }
            }
        }
        for w in (0..n).filter(|&w| has_plain[w]) {
            for &y in &self.implicit_from[w] {
                out.push(Self::build(state, &[self.plain_id[w]], &[y]));
            }
        }
        out
    }
}

fn contains_multiset(big: &[u32], small: &[u32]) -> bool {
    let mut i = 0;
    for &x in small {
        while i < big.len() && big[i] < x {
            i += 1;
        }
        if i == big.len() || big[i] != x {
            return false;
        }
        i += 1;
    }
    true
}

/// Lower bound on the moves needed before `goal` fits inside `state`. A move
/// creates at most two generators, at most one of them with nothing removed.
fn distance_bound(state: &[u32], goal: &[u32], plain: &[bool]) -> usize {
    let (mut i, mut total, mut plain_missing) = (0, 0usize, 0usize);
    for &x in goal {
        while i < state.len() && state[i] < x {
            i += 1;
        }
        if i < state.len() && state[i] == x {
            i += 1;
        } else {
            total += 1;
            plain_missing += plain[x as usize] as usize;
        }
    }
    plain_missing.max(total.div_ceil(2))
}

/// Elements one rewrite away from `x`.
pub fn neighbors(g: &RelativeGraph, x: &MonoidElement) -> BTreeSet<MonoidElement> {
    let mut search = Search::new(g);
    let s = search.encode(x);
    search.neighbors(&s).iter().map(|t| search.decode(t)).collect()
}

/// Vertex weights p with p_v >= sum of p over in-edges of v, equality on S,
/// and p_w = 0 when w emits infinitely many edges. `None` is an infinite
/// weight. φ⟨v,X⟩ = p_v - Σ_{e in X} p_{s(e)} is then nonnegative and
/// constant on every class, so φ(a) > φ(b) rules out a ≤ b.
pub type Weight = Vec<Option<BigRational>>;

/// φ(x), or None when x meets an infinite weight.
pub fn weight_of(p: &Weight, x: &MonoidElement) -> Option<BigRational> {
    let mut total = BigRational::zero();
    for gen in &x.0 {
        let pv = p[gen.v].as_ref()?;
        total += pv;
        for (w, &k) in gen.x.iter().enumerate() {
            if k > 0 {
                total -= p[w].as_ref().expect("finite below a finite vertex") * BigRational::from_integer(k.into());
            }
        }
    }
    Some(total)
}

/// Checks every condition on p exactly.
pub fn is_invariant_weight(g: &RelativeGraph, p: &Weight) -> bool {
    let n = g.vertex_count();
    if p.len() != n {
        return false;
    }
    for v in 0..n {
        let Some(pv) = &p[v] else {
            if g.in_relations(v) {
                return false;
            }
            continue;
        };
        if pv.is_negative() {
            return false;
        }
        let mut inflow = BigRational::zero();
        for w in g.in_neighbors(v) {
            match (&p[w], g.mult(w, v)) {
                (None, _) => return false,
                (Some(pw), Multiplicity::Inf) if !pw.is_zero() => return false,
                (Some(_), Multiplicity::Inf) => {}
                (Some(pw), Multiplicity::Fin(k)) => inflow += pw * BigRational::from_integer(k.into()),
            }
        }
        if inflow > *pv || (g.in_relations(v) && inflow != *pv) {
            return false;
        }
    }
    true
}

fn snap(x: f64) -> Option<BigRational> {
    // continued fraction with a bounded denominator
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() < 1e-9 {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    ((h1 as f64) / (k1 as f64) - x).abs().lt(&1e-9).then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// An invariant weight with φ(a) > φ(b) and φ(b) finite, found by linear
/// programming and verified exactly.
pub fn separating_weight(g: &RelativeGraph, a: &MonoidElement, b: &MonoidElement) -> Option<Weight> {
    let n = g.vertex_count();
    let anchors: VertexSet = b.0.iter().map(|x| x.v).chain(g.relations().iter()).collect();
    let finite = backward_reach(g, &anchors);
    let mut p: Weight = vec![None; n];
    if a.0.iter().any(|x| !finite.contains(x.v)) {
        for v in &finite {
            p[v] = Some(BigRational::zero());
        }
        return is_invariant_weight(g, &p).then_some(p);
    }
    let mut coeff = vec![0f64; n];
    for (x, sign) in a.0.iter().map(|x| (x, 1.0)).chain(b.0.iter().map(|x| (x, -1.0))) {
        coeff[x.v] += sign;
        for (w, &k) in x.x.iter().enumerate() {
            coeff[w] -= sign * k as f64;
        }
    }
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<Option<Variable>> = (0..n)
        .map(|w| {
            finite.contains(w).then(|| {
                let emits_inf = (0..n).any(|v| g.mult(w, v).is_inf());
                lp.add_var(coeff[w], (0.0, if emits_inf { 0.0 } else { 1.0 }))
            })
        })
        .collect();
    for v in &finite {
        let mut row = vec![0f64; n];
        row[v] = 1.0;
        for w in g.in_neighbors(v) {
            if let Multiplicity::Fin(k) = g.mult(w, v) {
                row[w] -= k as f64;
            }
        }
        if row.iter().all(|&c| c == 0.0) {
            continue;
        }
        let mut expr = LinearExpr::empty();
        for (w, &c) in row.iter().enumerate().filter(|(_, &c)| c != 0.0) {
            expr.add(vars[w].expect("hereditary"), c);
        }
        let op = if g.in_relations(v) { ComparisonOp::Eq } else { ComparisonOp::Ge };
        lp.add_constraint(expr, op, 0.0);
    }
    let sol = lp.solve().ok()?;
    if sol.objective() < 1e-7 {
        return None;
    }
    for v in &finite {
        p[v] = Some(snap(*sol.var_value(vars[v].expect("in range")))?);
    }
    if !is_invariant_weight(g, &p) {
        return None;
    }
    let (fa, fb) = (weight_of(&p, a)?, weight_of(&p, b)?);
    (fa > fb).then_some(p)
}

/// Searches for a rewrite of `b` into `a + c`.
pub fn leq_bounded(g: &RelativeGraph, a: &MonoidElement, b: &MonoidElement, budget: Budget) -> OracleAnswer {
    let mut search = Search::new(g);
    let goal = search.encode(a);
    let start = search.encode(b);
    let mut states: Vec<State> = vec![start.clone()];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let trace_to = |search: &Search, states: &[State], parent: &[usize], mut at: usize| {
        let mut trace = Vec::new();
        while at != usize::MAX {
            trace.push(search.decode(&states[at]));
            at = parent[at];
        }
        trace.reverse();
        OracleAnswer::Yes { trace }
    };
    if contains_multiset(&start, &goal) {
        return trace_to(&search, &states, &parent, 0);
    }
    if separating_weight(g, a, b).is_some() {
        return OracleAnswer::Unknown { reason: UnknownReason::Invariant, states: 1 };
    }
    let mut seen: FxHashSet<State> = FxHashSet::default();
    seen.insert(start);
    let mut frontier = vec![0usize];
    let mut pruned = false;
    for depth in 1..=budget.max_depth {
        let slack = budget.max_depth - depth;
        let plain: Vec<bool> = search.gens.iter().map(Generator::is_plain).collect();
        let mut next = Vec::new();
        for &k in &frontier {
            let current = states[k].clone();
            for t in search.neighbors(&current) {
                if seen.contains(&t) {
                    continue;
                }
                if distance_bound(&t, &goal, &plain) > slack {
                    pruned = true;
                    continue;
                }
                if states.len() >= budget.max_states {
                    return OracleAnswer::Unknown { reason: UnknownReason::Budget, states: states.len() };
                }
                seen.insert(t.clone());
                states.push(t);
                parent.push(k);
                if contains_multiset(states.last().expect("just pushed"), &goal) {
                    return trace_to(&search, &states, &parent, states.len() - 1);
                }
                next.push(states.len() - 1);
            }
        }
        if next.is_empty() {
            let reason = if pruned { UnknownReason::Budget } else { UnknownReason::ClassExhausted };
            return OracleAnswer::Unknown { reason, states: states.len() };
        }
        frontier = next;
    }
    OracleAnswer::Unknown { reason: UnknownReason::Budget, states: states.len() }
}

/// Searches for 2[p_m] ≤ [p_m].
pub fn properly_infinite_bounded(g: &RelativeGraph, m: &Model, budget: Budget) -> Result<OracleAnswer, ModelError> {
    let a = MonoidElement::of_model(g, m)?;
    Ok(leq_bounded(g, &a.scaled(2), &a, budget))
}
