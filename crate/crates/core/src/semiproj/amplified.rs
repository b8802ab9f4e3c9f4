use thiserror::Error;

use crate::graph::{forward_reach, strict_forward_reach, RelativeGraph};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("edge {src}->{dst} has finite nonzero multiplicity; the graph is not amplified")]
pub struct NotAmplified {
    pub src: Vertex,
    pub dst: Vertex,
}

/// For graphs whose multiplicities are all 0 or inf: semiprojective iff
/// whenever v reaches w by a path of length l >= 1, it also does by a
/// longer one. That holds iff every such route can pass a cycle.
pub fn amplified_semiprojective(g: &RelativeGraph) -> Result<bool, NotAmplified> {
    let n = g.vertex_count();
    for src in 0..n {
        for dst in 0..n {
            let m = g.mult(src, dst);
            if !m.is_zero() && !m.is_inf() {
                return Err(NotAmplified { src, dst });
            }
        }
    }
    let reach: Vec<VertexSet> = (0..n).map(|v| forward_reach(g, &VertexSet::singleton(v))).collect();
    let strict: Vec<VertexSet> = (0..n)
        .map(|v| strict_forward_reach(g, &VertexSet::singleton(v)))
        .collect();
    let cyclic: VertexSet = (0..n).filter(|&c| strict[c].contains(c)).collect();
    for v in 0..n {
        for w in &strict[v] {
            let pumpable = cyclic.iter().any(|c| reach[v].contains(c) && reach[c].contains(w));
            if !pumpable {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
