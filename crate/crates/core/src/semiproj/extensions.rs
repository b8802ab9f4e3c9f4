use super::is_semiprojective;
use crate::graph::{backward_reach, count_paths, PathQuery, RelativeGraph};
use crate::vertex_set::Vertex;

/// Ordered pairs (v0, v1) with property (*): v1 carries no relation, neither
/// vertex feeds Ω_{v1}, and v0 either emits infinitely many paths or is a
/// different vertex without a relation.
pub fn star_pairs(g: &RelativeGraph) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let all = g.vertices();
    let infinite_paths: Vec<bool> = (0..n)
        .map(|v| count_paths(g, v, &all, &PathQuery::any()).is_inf())
        .collect();
    let mut out = Vec::new();
    for v1 in 0..n {
        if g.in_relations(v1) {
            continue;
        }
        let feeders = backward_reach(g, &g.omega(v1));
        if feeders.contains(v1) {
            continue;
        }
        for v0 in 0..n {
            if feeders.contains(v0) {
                continue;
            }
            if infinite_paths[v0] || (v0 != v1 && !g.in_relations(v0)) {
                out.push((v0, v1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Semiprojective, and every gauge-invariant unital extension by a
/// semiprojective ideal stays semiprojective.
pub fn extension_safe(g: &RelativeGraph) -> bool {
    is_semiprojective(g).semiprojective && star_pairs(g).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fixtures() {
        let c = RelativeGraph::from_small(&[&[0]], &[]).unwrap();
        assert!(star_pairs(&c).is_empty());
        assert!(extension_safe(&c));
        let c2 = RelativeGraph::from_small(&[&[0, 0], &[0, 0]], &[]).unwrap();
        assert_eq!(star_pairs(&c2), vec![(0, 1), (1, 0)]);
        let t = RelativeGraph::from_small(&[&[1]], &[]).unwrap();
        assert_eq!(star_pairs(&t), vec![(0, 0)]);
        let o2 = RelativeGraph::from_small(&[&[2]], &[0]).unwrap();
        assert!(extension_safe(&o2));
    }
}
