mod common;

use common::*;
use garsp_core::graph::{
    backward_reach, classify_cycles, count_paths, forward_reach, is_af, make_standard, reach,
    CycleClass, Direction, PathQuery,
};
use garsp_core::{ExtNat, Multiplicity, RelativeGraph, VertexSet};
use proptest::prelude::*;

// Brute force: sum of edge-multiplicity products over all walks from src
// into dst of length in [min_len, max_len]. Infinite multiplicities and
// sums saturate at `cap`.
fn walk_count(g: &RelativeGraph, src: usize, dst: &VertexSet, min_len: usize, max_len: usize, cap: u128) -> u128 {
    fn go(
        g: &RelativeGraph,
        at: usize,
        len: usize,
        weight: u128,
        dst: &VertexSet,
        min_len: usize,
        max_len: usize,
        cap: u128,
        total: &mut u128,
    ) {
        if *total >= cap {
            return;
        }
        if len >= min_len && dst.contains(at) {
            *total = total.saturating_add(weight).min(cap);
        }
        if len == max_len {
            return;
        }
        for y in 0..g.vertex_count() {
            let m = match g.mult(at, y) {
                Multiplicity::Fin(0) => continue,
                Multiplicity::Fin(k) => k as u128,
                Multiplicity::Inf => cap,
            };
            go(g, y, len + 1, weight.saturating_mul(m).min(cap), dst, min_len, max_len, cap, total);
        }
    }
    let mut total = 0;
    go(g, src, 0, 1, dst, min_len, max_len, cap, &mut total);
    total
}

// Infinite iff some walk into dst is longer than the vertex count.
fn brute_count(g: &RelativeGraph, src: usize, dst: &VertexSet) -> ExtNat {
    let n = g.vertex_count();
    let long = walk_count(g, src, dst, n + 1, 2 * n + 1, 1);
    if long > 0 {
        ExtNat::Inf
    } else {
        ExtNat::from(walk_count(g, src, dst, 0, n, u128::MAX) as u64)
    }
}

// First-return walks at v, length at most 2n+1, saturated at 2.
fn brute_first_returns(g: &RelativeGraph, v: usize) -> u64 {
    fn go(g: &RelativeGraph, v: usize, at: usize, len: usize, weight: u64, limit: usize, total: &mut u64) {
        if *total >= 2 || len == limit {
            return;
        }
        for y in 0..g.vertex_count() {
            let m = match g.mult(at, y) {
                Multiplicity::Fin(0) => continue,
                Multiplicity::Fin(k) => k.min(2),
                Multiplicity::Inf => 2,
            };
            let w = (weight * m).min(2);
            if y == v {
                *total = (*total + w).min(2);
            } else {
                go(g, v, y, len + 1, w, limit, total);
            }
        }
    }
    let mut total = 0;
    go(g, v, v, 0, 1, 2 * g.vertex_count() + 1, &mut total);
    total
}

#[test]
fn count_paths_matches_enumeration_on_three_vertex_graphs() {
    let alpha: Vec<Multiplicity> = (0..3).map(Multiplicity::Fin).collect();
    for rows in matrices(3, &alpha) {
        let g = RelativeGraph::new(rows, VertexSet::new()).unwrap();
        for src in 0..3 {
            for dst in subsets(3) {
                assert_eq!(
                    count_paths(&g, src, &dst, &PathQuery::any()),
                    brute_count(&g, src, &dst),
                    "{g:?} {src} {dst}"
                );
            }
        }
    }
}

#[test]
fn classify_cycles_matches_enumeration() {
    for g in small_graph_algebras(3, &alphabet()) {
        let c = classify_cycles(&g);
        for v in 0..g.vertex_count() {
            let expected = match brute_first_returns(&g, v) {
                0 => CycleClass::C0,
                1 => CycleClass::C1,
                _ => CycleClass::C2,
            };
            assert_eq!(c.class(v), expected, "{g:?} vertex {v}");
        }
    }
}

#[test]
fn fqrun_classes_and_infinite_set() {
    let g = fqrun();
    let c = classify_cycles(&g);
    assert_eq!(c.c2(), VertexSet::from([2, 6]));
    assert_eq!(c.c1(), VertexSet::from([4]));
    assert_eq!(c.c0(), VertexSet::from([0, 1, 3, 5]));
    assert_eq!(c.infinite_set(&g), VertexSet::from([2, 6]));
    assert!(!is_af(&g));
    // everything that emits a path into the double loop at drawing vertex 3
    let brute: VertexSet = (0..7)
        .filter(|&u| walk_count(&g, u, &VertexSet::singleton(2), 0, 7, 1) > 0)
        .collect();
    assert_eq!(backward_reach(&g, &VertexSet::singleton(2)), brute);
    assert_eq!(brute, VertexSet::from([1, 2, 4]));
}

#[test]
fn path_count_examples() {
    let chain = graph(&[&[0, 2, 0], &[0, 0, 2], &[0, 0, 0]], &[1, 2]);
    assert_eq!(count_paths(&chain, 0, &VertexSet::from([2]), &PathQuery::any()), ExtNat::from(4));
    let looped = graph(&[&[0, 1, 0], &[0, 1, 1], &[0, 0, 0]], &[1, 2]);
    assert_eq!(count_paths(&looped, 0, &VertexSet::from([2]), &PathQuery::any()), ExtNat::Inf);
    assert_eq!(count_paths(&k_tilde(), 0, &VertexSet::from([1]), &PathQuery::any()), ExtNat::Inf);
    assert_eq!(count_paths(&c(), 0, &VertexSet::from([0]), &PathQuery::any()), ExtNat::one());
}

#[test]
fn infinite_set_examples() {
    assert_eq!(classify_cycles(&toeplitz()).infinite_set(&toeplitz()), VertexSet::from([0]));
    let ct = graph(&[&[1]], &[0]);
    assert!(classify_cycles(&ct).infinite_set(&ct).is_empty());
    assert_eq!(classify_cycles(&cuntz2()).c2(), VertexSet::from([0]));
}

#[test]
fn make_standard_examples() {
    let s = make_standard(&toeplitz());
    assert_eq!(s.vertex_count(), 2);
    assert_eq!(s.relations(), &s.regular_vertices());
    let g = fqrun();
    let s = make_standard(&g);
    // drawing vertex 3 is regular but outside S: one fresh copy
    assert_eq!(s.vertex_count(), 8);
    assert_eq!(s.mult(7, 2), Multiplicity::Fin(2));
    assert_eq!(s.mult(7, 0), Multiplicity::Fin(1));
    assert_eq!(s.relations(), &VertexSet::from([0, 2, 3, 4, 5]));
    for g in small_graph_algebras(2, &alphabet()) {
        assert_eq!(make_standard(&g), g);
    }
}

fn arb_finite_graph(max_n: usize) -> impl Strategy<Value = RelativeGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..3, n * n).prop_map(move |cells| {
            let rows = cells.chunks(n).map(|r| r.iter().map(|&k| Multiplicity::Fin(k)).collect()).collect();
            RelativeGraph::new(rows, VertexSet::new()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn reach_is_a_closure(g in arb_graph(5), mask in 0u64..32, extra in 0u64..32) {
        let n = g.vertex_count();
        let from = VertexSet::from_mask(mask & ((1 << n) - 1));
        let more = from.union(&VertexSet::from_mask(extra & ((1 << n) - 1)));
        for dir in [Direction::Forward, Direction::Backward] {
            let r = reach(&g, &from, dir);
            prop_assert!(from.is_subset(&r));
            prop_assert_eq!(reach(&g, &r, dir), r.clone());
            prop_assert!(r.is_subset(&reach(&g, &more, dir)));
        }
        let fwd = forward_reach(&g, &from);
        for u in 0..n {
            let reaches_u = from.iter().any(|s| backward_reach(&g, &VertexSet::singleton(u)).contains(s));
            prop_assert_eq!(fwd.contains(u), reaches_u);
        }
    }

    #[test]
    fn count_paths_matches_enumeration_on_four_vertices(g in arb_finite_graph(4), src in 0usize..4, mask in 0u64..16) {
        let src = src % g.vertex_count();
        let dst = VertexSet::from_mask(mask & ((1 << g.vertex_count()) - 1));
        prop_assert_eq!(count_paths(&g, src, &dst, &PathQuery::any()), brute_count(&g, src, &dst));
    }

    #[test]
    fn nonempty_and_excluded_counts(g in arb_finite_graph(4), src in 0usize..4, mask in 0u64..16, ex in 0u64..16) {
        let n = g.vertex_count();
        let src = src % n;
        let dst = VertexSet::from_mask(mask & ((1 << n) - 1));
        let excl = VertexSet::from_mask(ex & ((1 << n) - 1));
        let by_first_edge: ExtNat = (0..n)
            .filter(|&y| !excl.contains(y))
            .map(|y| brute_count(&g, y, &dst).mul_mult(g.mult(src, y)))
            .sum();
        let q = PathQuery { min_len: 1, exclude_first_edge_into: Some(excl) };
        prop_assert_eq!(count_paths(&g, src, &dst, &q), by_first_edge);
    }

    #[test]
    fn text_and_json_round_trip(g in arb_graph(5)) {
        prop_assert_eq!(RelativeGraph::parse(&g.to_text()).unwrap(), g.clone());
        prop_assert_eq!(RelativeGraph::parse(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn make_standard_is_a_graph_algebra(g in arb_graph(4)) {
        let s = make_standard(&g);
        prop_assert_eq!(s.relations(), &s.regular_vertices());
        prop_assert_eq!(make_standard(&s), s.clone());
        let missing = g.regular_vertices().difference(g.relations()).len();
        prop_assert_eq!(s.vertex_count(), g.vertex_count() + missing);
    }
}
