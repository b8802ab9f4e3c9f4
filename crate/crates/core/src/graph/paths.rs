use serde::{Deserialize, Serialize};

use super::RelativeGraph;
use crate::ext_nat::{ExtNat, Multiplicity};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathQuery {
    pub min_len: usize,
    /// Paths of length >= 1 whose first edge lands here are not counted.
    pub exclude_first_edge_into: Option<VertexSet>,
}

impl PathQuery {
    pub fn any() -> Self {
        PathQuery::default()
    }

    pub fn nonempty() -> Self {
        PathQuery { min_len: 1, exclude_first_edge_into: None }
    }
}

/// Number of paths from `src` ending in `dst`, counted with multiplicity.
pub fn count_paths(g: &RelativeGraph, src: Vertex, dst: &VertexSet, q: &PathQuery) -> ExtNat {
    let mult = |a: Vertex, b: Vertex| g.mult(a, b);
    count_from(g.vertex_count(), &mult, src, dst, q)
}

/// Path counts into `dst` from every vertex (length >= 0).
pub fn path_counts_to(g: &RelativeGraph, dst: &VertexSet) -> Vec<ExtNat> {
    counts_with(g.vertex_count(), &|a, b| g.mult(a, b), dst)
}

pub(crate) fn count_from(
    n: usize,
    mult: &dyn Fn(Vertex, Vertex) -> Multiplicity,
    src: Vertex,
    dst: &VertexSet,
    q: &PathQuery,
) -> ExtNat {
    let base = counts_with(n, mult, dst);
    if q.min_len == 0 && q.exclude_first_edge_into.is_none() {
        return base[src].clone();
    }
    // at_least[j][x] = paths of length >= j from x into dst
    let mut layer = base.clone();
    for _ in 1..q.min_len.max(1) {
        layer = (0..n)
            .map(|x| (0..n).map(|y| layer[y].mul_mult(mult(x, y))).sum())
            .collect();
    }
    let excl = q.exclude_first_edge_into.clone().unwrap_or_default();
    let stepped: ExtNat = (0..n)
        .filter(|y| !excl.contains(*y))
        .map(|y| layer[y].mul_mult(mult(src, y)))
        .sum();
    if q.min_len == 0 && dst.contains(src) {
        stepped + ExtNat::one()
    } else {
        stepped
    }
}

pub(crate) fn counts_with(
    n: usize,
    mult: &dyn Fn(Vertex, Vertex) -> Multiplicity,
    dst: &VertexSet,
) -> Vec<ExtNat> {
    // vertices with at least one path into dst
    let mut live = vec![false; n];
    let mut stack: Vec<Vertex> = dst.iter().filter(|&v| v < n).collect();
    for &v in &stack {
        live[v] = true;
    }
    while let Some(u) = stack.pop() {
        for x in 0..n {
            if !live[x] && !mult(x, u).is_zero() {
                live[x] = true;
                stack.push(x);
            }
        }
    }
    let succ: Vec<Vec<Vertex>> = (0..n)
        .map(|x| {
            if live[x] {
                (0..n).filter(|&y| live[y] && !mult(x, y).is_zero()).collect()
            } else {
                Vec::new()
            }
        })
        .collect();

    // Infinitely many paths exactly when some live route meets a cycle or an
    // infinite edge bundle.
    let mut bad = vec![false; n];
    for a in (0..n).filter(|&a| live[a]) {
        if succ[a].iter().any(|&b| mult(a, b).is_inf()) || on_cycle(a, &succ) {
            bad[a] = true;
        }
    }
    let mut inf = bad.clone();
    let mut stack: Vec<Vertex> = (0..n).filter(|&a| bad[a]).collect();
    while let Some(u) = stack.pop() {
        for x in 0..n {
            if live[x] && !inf[x] && succ[x].contains(&u) {
                inf[x] = true;
                stack.push(x);
            }
        }
    }

    let mut memo: Vec<Option<ExtNat>> = vec![None; n];
    for x in 0..n {
        if !live[x] {
            memo[x] = Some(ExtNat::zero());
        } else if inf[x] {
            memo[x] = Some(ExtNat::Inf);
        }
    }
    for x in 0..n {
        finite_count(x, mult, dst, &succ, &mut memo);
    }
    memo.into_iter().map(|c| c.expect("all counted")).collect()
}

fn on_cycle(a: Vertex, succ: &[Vec<Vertex>]) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = succ[a].clone();
    while let Some(u) = stack.pop() {
        if u == a {
            return true;
        }
        if !seen[u] {
            seen[u] = true;
            stack.extend(succ[u].iter().copied());
        }
    }
    false
}

// Iterative DFS over an acyclic region.
fn finite_count(
    root: Vertex,
    mult: &dyn Fn(Vertex, Vertex) -> Multiplicity,
    dst: &VertexSet,
    succ: &[Vec<Vertex>],
    memo: &mut [Option<ExtNat>],
) {
    let mut stack = vec![(root, false)];
    while let Some((x, expanded)) = stack.pop() {
        if memo[x].is_some() {
            continue;
        }
        if expanded {
            let mut total = if dst.contains(x) { ExtNat::one() } else { ExtNat::zero() };
            for &y in &succ[x] {
                total = total + memo[y].as_ref().expect("successor done").mul_mult(mult(x, y));
            }
            memo[x] = Some(total);
        } else {
            stack.push((x, true));
            for &y in &succ[x] {
                if memo[y].is_none() {
                    stack.push((y, false));
                }
            }
        }
    }
}
