#![allow(dead_code)]

use std::collections::BTreeMap;

use garsp_core::projections::Model;
use garsp_core::{Multiplicity, RelativeGraph, VertexSet};
use proptest::prelude::*;

pub const INF: u64 = u64::MAX;

pub fn graph(rows: &[&[u64]], s: &[usize]) -> RelativeGraph {
    RelativeGraph::from_small(rows, s).unwrap()
}

pub fn alphabet() -> Vec<Multiplicity> {
    vec![
        Multiplicity::Fin(0),
        Multiplicity::Fin(1),
        Multiplicity::Fin(2),
        Multiplicity::Inf,
    ]
}

/// Every n x n matrix over the alphabet, first entry most significant.
pub fn matrices(n: usize, alpha: &[Multiplicity]) -> impl Iterator<Item = Vec<Vec<Multiplicity>>> + '_ {
    let cells = n * n;
    let total = alpha.len().pow(cells as u32);
    (0..total).map(move |mut idx| {
        let mut flat = vec![Multiplicity::ZERO; cells];
        for c in (0..cells).rev() {
            flat[c] = alpha[idx % alpha.len()];
            idx /= alpha.len();
        }
        flat.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect()
    })
}

/// Graph algebras on at most `max_n` vertices over the alphabet.
pub fn small_graph_algebras(max_n: usize, alpha: &[Multiplicity]) -> impl Iterator<Item = RelativeGraph> + '_ {
    (1..=max_n).flat_map(move |n| matrices(n, alpha).map(|m| RelativeGraph::graph_algebra(m).unwrap()))
}

pub fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0..1u64 << n).map(VertexSet::from_mask)
}

/// The seven-vertex worked example, vertex k of the drawing is id k-1:
/// 2->1, 2->3, two loops at 3, 3->1, 4->1, loop at 5, 5->3, 5->4, 6->4,
/// infinitely many loops at 7, 7->6; S = {1,4,5,6}.
pub fn fqrun() -> RelativeGraph {
    let mut a = vec![vec![0u64; 7]; 7];
    let mut e = |s: usize, r: usize, k: u64| a[s - 1][r - 1] = k;
    e(2, 1, 1);
    e(2, 3, 1);
    e(3, 3, 2);
    e(3, 1, 1);
    e(4, 1, 1);
    e(5, 5, 1);
    e(5, 3, 1);
    e(5, 4, 1);
    e(6, 4, 1);
    e(7, 7, INF);
    e(7, 6, 1);
    let rows: Vec<&[u64]> = a.iter().map(|r| r.as_slice()).collect();
    graph(&rows, &[0, 3, 4, 5])
}

/// v0, w0, v1, w1 = ids 0..3: two loops at each v_i, one edge w_i -> v_i,
/// S = {v0, v1}.
pub fn sumexxs() -> RelativeGraph {
    graph(
        &[&[2, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 2, 0], &[0, 0, 1, 0]],
        &[0, 2],
    )
}

pub fn k_tilde() -> RelativeGraph {
    graph(&[&[0, INF], &[0, 0]], &[])
}

/// Loop vertex in S emitting infinitely many edges to a second vertex.
pub fn ct_k_tilde() -> RelativeGraph {
    graph(&[&[1, INF], &[0, 0]], &[0])
}

pub fn toeplitz() -> RelativeGraph {
    graph(&[&[1]], &[])
}

pub fn cuntz2() -> RelativeGraph {
    graph(&[&[2]], &[0])
}

pub fn cuntz_toeplitz2() -> RelativeGraph {
    graph(&[&[2]], &[])
}

pub fn c() -> RelativeGraph {
    graph(&[&[0]], &[])
}

pub fn c2() -> RelativeGraph {
    graph(&[&[0, 0], &[0, 0]], &[])
}

/// Source -> .. -> emitter => receiver -> .. -> sink, with `m` edges before
/// the infinite bundle and `n` after it. S is every regular vertex.
pub fn one_ideal_chain(m: usize, n: usize) -> RelativeGraph {
    let size = m + n + 2;
    let mut a = vec![vec![Multiplicity::ZERO; size]; size];
    for i in 0..m {
        a[i][i + 1] = Multiplicity::Fin(1);
    }
    a[m][m + 1] = Multiplicity::Inf;
    for i in m + 1..size - 1 {
        a[i][i + 1] = Multiplicity::Fin(1);
    }
    RelativeGraph::graph_algebra(a).unwrap()
}

/// Vertex permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn key(g: &RelativeGraph) -> (Vec<Vec<Multiplicity>>, Vec<usize>) {
    (g.rows(), g.relations().iter().collect())
}

/// One graph algebra per isomorphism class, on at most `max_n` vertices.
pub fn graph_algebra_classes(max_n: usize, alpha: &[Multiplicity]) -> Vec<RelativeGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let perms = permutations(n);
        for m in matrices(n, alpha) {
            let g = RelativeGraph::graph_algebra(m).unwrap();
            let k = key(&g);
            if perms.iter().all(|p| key(&g.permuted(p)) >= k) {
                out.push(g);
            }
        }
    }
    out
}

/// Vertex sets of g up to automorphisms of g.
pub fn subsets_up_to_symmetry(g: &RelativeGraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let autos: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| &g.permuted(p) == g).collect();
    subsets(n)
        .filter(|v| {
            autos.iter().all(|p| {
                let image: VertexSet = (0..n).filter(|&a| v.contains(p[a])).collect();
                image.mask() >= v.mask()
            })
        })
        .collect()
}

/// Every valid model removing at most `max_removed` edges in total.
pub fn models(g: &RelativeGraph, max_removed: u64) -> Vec<Model> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v_set in subsets(n) {
        let slots: Vec<(usize, usize)> = v_set
            .iter()
            .flat_map(|v| (0..n).filter(move |&w| !g.mult(w, v).is_zero()).map(move |w| (v, w)))
            .collect();
        let mut choose = |picked: &[(usize, usize)]| {
            let mut removed: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
            for &(v, w) in picked {
                *removed.entry(v).or_default().entry(w).or_default() += 1;
            }
            if let Ok(m) = Model::new(g, v_set.clone(), removed) {
                out.push(m);
            }
        };
        choose(&[]);
        if max_removed >= 1 {
            for i in 0..slots.len() {
                choose(&[slots[i]]);
                if max_removed >= 2 {
                    for j in i..slots.len() {
                        choose(&[slots[i], slots[j]]);
                    }
                }
            }
        }
    }
    out
}

/// Small graphs over the alphabet with S a random subset of the regular
/// vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = RelativeGraph> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::sample::select(alphabet()), n * n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(cells, pick)| {
                let rows: Vec<Vec<Multiplicity>> = cells.chunks(n).map(|r| r.to_vec()).collect();
                let g = RelativeGraph::new(rows, VertexSet::new()).unwrap();
                let s = g.regular_vertices().iter().filter(|&v| pick[v]).collect();
                g.with_relations(s).unwrap()
            })
    })
}

/// The twelve non-semiprojective 2 x 2 graph algebras over {0,1,2,inf}.
pub fn census_failures() -> Vec<[[u64; 2]; 2]> {
    vec![
        [[0, 0], [INF, 0]],
        [[1, 0], [INF, 0]],
        [[2, 0], [INF, 0]],
        [[0, INF], [0, 0]],
        [[1, INF], [0, 0]],
        [[0, 0], [INF, 1]],
        [[1, 0], [INF, 1]],
        [[2, 0], [INF, 1]],
        [[0, INF], [0, 1]],
        [[1, INF], [0, 1]],
        [[0, INF], [0, 2]],
        [[1, INF], [0, 2]],
    ]
}

pub fn to_multiplicities(rows: &[[u64; 2]; 2]) -> Vec<Vec<Multiplicity>> {
    rows.iter()
        .map(|r| r.iter().map(|&k| if k == INF { Multiplicity::Inf } else { Multiplicity::Fin(k) }).collect())
        .collect()
}

/// Every graph on at most `max_n` vertices whose entries are 0 or inf.
pub fn amplified_graphs(max_n: usize) -> Vec<RelativeGraph> {
    let alpha = [Multiplicity::ZERO, Multiplicity::Inf];
    (1..=max_n)
        .flat_map(|n| matrices(n, &alpha).map(|m| RelativeGraph::graph_algebra(m).unwrap()).collect::<Vec<_>>())
        .collect()
}
