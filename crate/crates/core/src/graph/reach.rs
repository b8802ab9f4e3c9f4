use std::collections::VecDeque;

use super::RelativeGraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Follow edges from source to range.
    Forward,
    /// Follow edges from range back to source.
    Backward,
}

/// Vertices joined to `from` by a path of length >= 0 in the given direction.
pub fn reach(g: &RelativeGraph, from: &VertexSet, dir: Direction) -> VertexSet {
    let mut seen = from.clone();
    let mut queue: VecDeque<_> = from.iter().collect();
    while let Some(u) = queue.pop_front() {
        for x in 0..g.vertex_count() {
            let m = match dir {
                Direction::Forward => g.mult(u, x),
                Direction::Backward => g.mult(x, u),
            };
            if !m.is_zero() && seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    seen
}

/// Vertices that emit a path into `to`, including `to` itself.
pub fn backward_reach(g: &RelativeGraph, to: &VertexSet) -> VertexSet {
    reach(g, to, Direction::Backward)
}

pub fn forward_reach(g: &RelativeGraph, from: &VertexSet) -> VertexSet {
    reach(g, from, Direction::Forward)
}

/// Ranges of paths of length >= 1 out of `from`.
pub fn strict_forward_reach(g: &RelativeGraph, from: &VertexSet) -> VertexSet {
    let step: VertexSet = from.iter().flat_map(|u| g.out_neighbors(u)).collect();
    forward_reach(g, &step)
}
