mod common;

use common::*;
use garsp_core::graph::{backward_reach, forward_reach, lift_to_standard, make_standard};
use garsp_core::ideals::enumerate_admissible_pairs;
use garsp_core::oracle::properly_infinite_bounded;
use garsp_core::oracle::Budget;
use garsp_core::projections::{
    corner_graph, find_fq, fq_witness, get_top, h_model, infinite_model, model_properly_infinite,
    project_model_to_quotient, properly_infinite, FiniteTest, Finiteness, FqStep, Model, PiVerdict,
    WitnessKind,
};
use garsp_core::{ExtNat, Multiplicity, RelativeGraph, VertexSet};
use proptest::prelude::*;

/// Drawing labels are one more than vertex ids.
fn drawn(labels: &[usize]) -> VertexSet {
    labels.iter().map(|k| k - 1).collect()
}

#[test]
fn fqrun_trace_matches_the_worked_table() {
    let g = fqrun();
    let (verdict, trace) = properly_infinite(&g, &drawn(&[1]));
    assert_eq!(verdict, PiVerdict::Pi);
    let expected = [
        (drawn(&[1]), drawn(&[1]), drawn(&[])),
        (drawn(&[2, 3, 4]), drawn(&[3, 4]), drawn(&[])),
        (drawn(&[5, 6]), drawn(&[6]), drawn(&[3])),
        (drawn(&[7]), drawn(&[7]), drawn(&[3])),
        (drawn(&[]), drawn(&[]), drawn(&[3, 7])),
    ];
    assert_eq!(trace.rows.len(), expected.len());
    for (m, (row, (v, w, r))) in trace.rows.iter().zip(expected).enumerate() {
        assert_eq!(row.m, m);
        assert_eq!((&row.v, &row.w, &row.r), (&v, &w, &r), "row {m}");
    }
    assert!(trace.to_table().ends_with("outcome: properly infinite\n"));
}

#[test]
fn fqrun_single_steps() {
    let g = fqrun();
    let step = find_fq(&g, &drawn(&[1]), &VertexSet::new()).unwrap();
    assert_eq!(step, FqStep::Next {
        pruned: drawn(&[1]),
        top: drawn(&[1]),
        v: drawn(&[2, 3, 4]),
        r: VertexSet::new(),
    });
    let FqStep::Next { v, r, .. } = find_fq(&g, &drawn(&[2, 3, 4]), &VertexSet::new()).unwrap() else {
        panic!("expected a step");
    };
    assert_eq!((v, r), (drawn(&[5, 6]), drawn(&[3])));
    assert_eq!(get_top(&g, &drawn(&[6])), drawn(&[6]));
}

fn sum_rule(v: &VertexSet) -> bool {
    // v0, w0, v1, w1 = 0, 1, 2, 3
    (!v.contains(1) || v.contains(0)) && (!v.contains(3) || v.contains(2))
}

#[test]
fn sumexxs_truth_table() {
    let g = sumexxs();
    for v in subsets(4) {
        let pi = properly_infinite(&g, &v).0 == PiVerdict::Pi;
        assert_eq!(pi, sum_rule(&v), "V = {v}");
    }
}

#[test]
fn sumexxs_sums_of_projections() {
    let g = sumexxs();
    let pi = |v: &[usize]| properly_infinite(&g, &v.iter().copied().collect()).0 == PiVerdict::Pi;
    let rows: [(&[usize], &[usize], bool, bool, bool); 4] = [
        (&[1], &[3], false, false, false),
        (&[0, 3], &[2, 1], false, false, true),
        (&[1], &[2, 3], false, true, false),
        (&[1], &[0, 2, 3], false, true, true),
    ];
    for (p, q, pp, qq, sum) in rows {
        let both: Vec<usize> = p.iter().chain(q).copied().collect();
        assert_eq!((pi(p), pi(q), pi(&both)), (pp, qq, sum), "{p:?} + {q:?}");
    }
}

#[test]
fn witness_examples() {
    let census = graph(&[&[2, 0], &[INF, 0]], &[]);
    let w = fq_witness(&census, &VertexSet::from([1])).unwrap();
    assert_eq!((w.kind, w.w, w.path_count), (WitnessKind::MQ, 1, ExtNat::one()));

    let ctk = ct_k_tilde();
    let w = fq_witness(&ctk, &VertexSet::from([0])).unwrap();
    assert_eq!((w.kind, w.w), (WitnessKind::TQ, 0));
    assert!(w.first_return_present && w.path_count.is_finite() && !w.path_count.is_zero());
    // the receiver is itself a singular sink of the search
    let w = fq_witness(&ctk, &VertexSet::from([1])).unwrap();
    assert_eq!((w.kind, w.w), (WitnessKind::MQ, 1));

    let chain = graph(&[&[0, 1], &[0, 0]], &[]);
    let w = fq_witness(&chain, &VertexSet::from([1])).unwrap();
    assert_eq!((w.kind, w.w, w.path_count), (WitnessKind::MQ, 1, ExtNat::one()));
}

#[test]
fn finiteness_examples() {
    let kt = k_tilde();
    let m = Model::of_vertices(VertexSet::from([1]));
    assert_eq!(infinite_model(&kt, &m), Ok(Finiteness::Finite));
    let t = toeplitz();
    assert_eq!(infinite_model(&t, &Model::of_vertices(VertexSet::from([0]))), Ok(Finiteness::Infinite));
    let defect = Model::parse(&t, "0;0<0").unwrap();
    assert_eq!(infinite_model(&t, &defect), Ok(Finiteness::Finite));
}

#[test]
fn corner_of_sumexxs_half() {
    let g = sumexxs();
    let f = corner_graph(&g, &Model::of_vertices(VertexSet::from([0, 1]))).unwrap();
    assert_eq!(f.graph, graph(&[&[2, 0], &[1, 0]], &[0]));
    assert_eq!(f.original, vec![0, 1]);
    let full = corner_graph(&g, &Model::of_vertices(g.vertices())).unwrap();
    assert_eq!(full.graph, g);
}

fn is_hereditary(g: &RelativeGraph, v: &VertexSet) -> bool {
    &backward_reach(g, v) == v
}

/// Every small graph: exhaustive where cheap.
fn family() -> Vec<RelativeGraph> {
    small_graph_algebras(2, &alphabet()).collect()
}

#[test]
fn dichotomy_on_two_vertex_graphs() {
    for g in family() {
        let pairs = enumerate_admissible_pairs(&g);
        for m in models(&g, 2) {
            if infinite_model(&g, &m).unwrap() == Finiteness::Infinite {
                continue;
            }
            for ap in &pairs {
                let (q, qm) = project_model_to_quotient(&g, &m, ap).unwrap();
                assert_eq!(infinite_model(&q.graph, &qm), Ok(Finiteness::Finite), "{:?} {m} {ap}", g.rows());
            }
        }
    }
}

#[test]
fn sum_dichotomy_on_two_vertex_graphs() {
    for g in family() {
        let ms = models(&g, 1);
        for a in &ms {
            for b in ms.iter().filter(|b| b.vertices().is_disjoint(a.vertices())) {
                let mut removed = a.removed_entries().clone();
                removed.extend(b.removed_entries().clone());
                let sum = Model::new(&g, a.vertices().union(b.vertices()), removed).unwrap();
                if infinite_model(&g, &sum).unwrap() == Finiteness::Infinite {
                    assert!(
                        infinite_model(&g, a).unwrap() == Finiteness::Infinite
                            || infinite_model(&g, b).unwrap() == Finiteness::Infinite,
                        "{:?}: {a} + {b}",
                        g.rows()
                    );
                }
            }
        }
    }
}

#[test]
fn model_verdicts_against_the_monoid_search() {
    let budget = Budget { max_depth: 10, max_states: 20_000 };
    for g in family() {
        for m in models(&g, 1) {
            let pi = model_properly_infinite(&g, &m).unwrap();
            let yes = properly_infinite_bounded(&g, &m, budget).unwrap().is_yes();
            if yes {
                assert_eq!(pi, PiVerdict::Pi, "{:?} {m}", g.rows());
            }
            if pi == PiVerdict::NotPi {
                assert!(!yes);
            }
        }
    }
}

fn arb_graph_and_set(max_n: usize) -> impl Strategy<Value = (RelativeGraph, VertexSet)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), (0u64..1 << n).prop_map(VertexSet::from_mask))
    })
}

fn arb_graph_and_model(max_n: usize) -> impl Strategy<Value = (RelativeGraph, Model)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let ms = models(&g, 2);
        (Just(g), prop::sample::select(ms))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn get_top_is_a_covering_antichain((g, v) in arb_graph_and_set(5)) {
        let w = get_top(&g, &v);
        prop_assert!(w.is_subset(&v));
        for a in &w {
            let down = forward_reach(&g, &VertexSet::singleton(a));
            for b in &w {
                prop_assert!(a == b || !down.contains(b));
            }
        }
        for x in &v {
            prop_assert!(forward_reach(&g, &VertexSet::singleton(x)).intersects(&w));
        }
    }

    #[test]
    fn make_standard_keeps_proper_infiniteness((g, v) in arb_graph_and_set(4)) {
        let s = make_standard(&g);
        let lifted = lift_to_standard(&g, &v);
        prop_assert_eq!(properly_infinite(&g, &v).0, properly_infinite(&s, &lifted).0);
    }

    #[test]
    fn finite_test_agrees_with_infinite_model((g, m) in arb_graph_and_model(3)) {
        prop_assert_eq!(FiniteTest::new(&g).test(&g, &m), infinite_model(&g, &m).unwrap());
    }

    #[test]
    fn dichotomy_in_quotients((g, m) in arb_graph_and_model(3)) {
        if infinite_model(&g, &m).unwrap() == Finiteness::Finite {
            for ap in enumerate_admissible_pairs(&g) {
                let (q, qm) = project_model_to_quotient(&g, &m, &ap).unwrap();
                prop_assert_eq!(infinite_model(&q.graph, &qm).unwrap(), Finiteness::Finite);
            }
        }
    }

    #[test]
    fn corner_route_agrees_on_hereditary_sets((g, v) in arb_graph_and_set(4)) {
        if is_hereditary(&g, &v) {
            let m = Model::of_vertices(v.clone());
            prop_assert_eq!(h_model(&g, &m).unwrap(), m.clone());
            prop_assert_eq!(model_properly_infinite(&g, &m).unwrap(), properly_infinite(&g, &v).0);
        }
    }

    #[test]
    fn h_model_output_satisfies_the_corner_hypotheses((g, m) in arb_graph_and_model(3)) {
        let h = h_model(&g, &m).unwrap();
        prop_assert!(m.vertices().is_subset(h.vertices()));
        prop_assert!(corner_graph(&g, &h).is_ok());
        // same proper infiniteness as the original vertex set when nothing is removed
        if m.removed_total() == 0 {
            prop_assert_eq!(model_properly_infinite(&g, &m).unwrap(), properly_infinite(&g, m.vertices()).0);
        }
    }

    #[test]
    fn witnesses_are_finite_and_positive((g, v) in arb_graph_and_set(4)) {
        if let Ok(w) = fq_witness(&g, &v) {
            prop_assert!(w.path_count.is_finite() && !w.path_count.is_zero());
            if w.kind == WitnessKind::MQ {
                prop_assert!(!g.in_relations(w.w));
            } else {
                prop_assert!(w.first_return_present && !w.cycle.is_empty());
            }
        }
    }
}

#[test]
fn standard_form_needs_the_fresh_copies() {
    // two loops at 0 feeding 1, no relations: p_1 maps onto the unit of C
    let g = graph(&[&[2, 1], &[0, 0]], &[]);
    let s = make_standard(&g);
    let v = VertexSet::from([1]);
    assert_eq!(properly_infinite(&g, &v).0, PiVerdict::NotPi);
    assert_eq!(properly_infinite(&s, &v).0, PiVerdict::Pi);
    assert_eq!(lift_to_standard(&g, &v), VertexSet::from([1, 3]));
    assert_eq!(properly_infinite(&s, &lift_to_standard(&g, &v)).0, PiVerdict::NotPi);
}

#[test]
fn corner_keeps_relations_outside_h() {
    // p_0 minus its loop range is the range of the edge from 1, equivalent to p_1
    let g = graph(&[&[1, 0], &[1, 2]], &[0, 1]);
    let m = Model::parse(&g, "0;0<0").unwrap();
    let f = corner_graph(&g, &h_model(&g, &m).unwrap()).unwrap();
    assert_eq!(f.graph.relations(), &VertexSet::from([0, 1]));
    assert_eq!(model_properly_infinite(&g, &m), Ok(PiVerdict::Pi));
}

#[test]
fn relations_can_be_dropped_only_outside_s() {
    let o2 = cuntz2();
    let mut full = std::collections::BTreeMap::new();
    full.insert(0, [(0, 2u64)].into_iter().collect());
    assert!(Model::new(&o2, VertexSet::from([0]), full).is_err());
    assert_eq!(o2.mult(0, 0), Multiplicity::Fin(2));
}
