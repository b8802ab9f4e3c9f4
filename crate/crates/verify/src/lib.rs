//! The acceptance criteria as plain functions. `tests/acceptance.rs` runs
//! them in order and prints one line each.

use std::time::{Duration, Instant};

use garsp_core::graph::make_standard;
use garsp_core::ideals::{enumerate_admissible_pairs, ideal_is_semiprojective, quotient_graph, AdmissiblePair};
use garsp_core::oracle::{properly_infinite_bounded, Budget, OracleAnswer, UnknownReason};
use garsp_core::projections::{
    fq_witness, infinite_model, project_model_to_quotient, properly_infinite, Finiteness, Model, PiVerdict,
};
use garsp_core::semiproj::{
    amplified_semiprojective, census, corner_semiprojective, extension_safe, is_semiprojective, obstruction_pair,
    one_ideal_check,
};
use garsp_core::{Multiplicity, RelativeGraph, VertexSet};

#[path = "../../core/tests/common/mod.rs"]
pub mod fixtures;

use fixtures::*;

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

pub struct Criterion {
    pub number: u32,
    pub name: &'static str,
    pub limit: Option<Duration>,
    pub run: fn() -> Outcome,
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { number: 1, name: "census reproduction", limit: secs(5), run: census_reproduction },
        Criterion { number: 2, name: "FindFQ trace", limit: secs(1), run: findfq_trace },
        Criterion { number: 3, name: "proper infiniteness truth table", limit: secs(1), run: truth_table },
        Criterion { number: 4, name: "Toeplitz and its compact ideal", limit: None, run: toeplitz_pair },
        Criterion { number: 5, name: "oracle equivalence", limit: secs(600), run: oracle_equivalence },
        Criterion { number: 6, name: "finiteness dichotomy", limit: None, run: finiteness_dichotomy },
        Criterion { number: 7, name: "standard form and quotient closure", limit: None, run: closure },
        Criterion { number: 8, name: "amplified criterion", limit: None, run: amplified },
        Criterion { number: 9, name: "extension safety", limit: None, run: extension_fixtures },
        Criterion { number: 10, name: "one-ideal family", limit: None, run: one_ideal_family },
    ]
}

/// Runs a criterion and folds its time limit into the verdict.
pub fn run(c: &Criterion) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = (c.run)();
    let took = start.elapsed();
    if let Some(limit) = c.limit {
        if took > limit {
            out.pass = false;
            out.detail = format!("{}; over the {:?} limit", out.detail, limit);
        }
    }
    (out, took)
}

fn family() -> Vec<RelativeGraph> {
    graph_algebra_classes(3, &alphabet())
}

fn census_reproduction() -> Outcome {
    let report = match census(2, &alphabet(), 1) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let mut found: Vec<_> = report.non_semiprojective.iter().map(|e| e.adj.clone()).collect();
    let mut expected: Vec<_> = census_failures().iter().map(to_multiplicities).collect();
    found.sort();
    expected.sort();
    let sp = |rows| is_semiprojective(&RelativeGraph::graph_algebra(to_multiplicities(rows)).unwrap()).semiprojective;
    let pair = !sp(&[[2, 0], [INF, 0]]) && sp(&[[2, INF], [0, 0]]);
    Outcome::new(
        report.total == 256 && found == expected && pair,
        format!("{} of {} non-semiprojective, transpose pair {}", found.len(), report.total, if pair { "ok" } else { "wrong" }),
    )
}

fn drawn(labels: &[usize]) -> VertexSet {
    labels.iter().map(|k| k - 1).collect()
}

fn findfq_trace() -> Outcome {
    let (verdict, trace) = properly_infinite(&fqrun(), &drawn(&[1]));
    let expected = [
        (drawn(&[1]), drawn(&[1]), drawn(&[])),
        (drawn(&[2, 3, 4]), drawn(&[3, 4]), drawn(&[])),
        (drawn(&[5, 6]), drawn(&[6]), drawn(&[3])),
        (drawn(&[7]), drawn(&[7]), drawn(&[3])),
        (drawn(&[]), drawn(&[]), drawn(&[3, 7])),
    ];
    let rows_match = trace.rows.len() == expected.len()
        && trace.rows.iter().zip(&expected).enumerate().all(|(m, (row, (v, w, r)))| {
            row.m == m && &row.v == v && &row.w == w && &row.r == r
        });
    Outcome::new(
        rows_match && verdict == PiVerdict::Pi,
        format!("{} rows, outcome {:?}", trace.rows.len(), verdict),
    )
}

fn truth_table() -> Outcome {
    let g = sumexxs();
    // v0, w0, v1, w1 = 0, 1, 2, 3
    let rule = |v: &VertexSet| (!v.contains(1) || v.contains(0)) && (!v.contains(3) || v.contains(2));
    let wrong: Vec<String> = subsets(4)
        .filter(|v| (properly_infinite(&g, v).0 == PiVerdict::Pi) != rule(v))
        .map(|v| v.to_string())
        .collect();
    Outcome::new(wrong.is_empty(), format!("16 subsets, {} mismatches {}", wrong.len(), wrong.join(" ")))
}

fn toeplitz_pair() -> Outcome {
    let t_sp = is_semiprojective(&toeplitz()).semiprojective;
    // the loop vertex in S plus a source standing in for the defect
    let standard = graph(&[&[1, 0], &[1, 0]], &[0]);
    let standard_ideal = AdmissiblePair::new(VertexSet::from([1]), VertexSet::from([0, 1]));
    let via_standard = ideal_is_semiprojective(&standard, &standard_ideal);
    let kt_ideal = AdmissiblePair::new(VertexSet::from([0]), VertexSet::from([0]));
    let via_kt = ideal_is_semiprojective(&k_tilde(), &kt_ideal);
    Outcome::new(
        t_sp && via_standard == Ok(false) && via_kt == Ok(false),
        format!("Toeplitz sp {t_sp}, K via standard form {via_standard:?}, via unitized compacts {via_kt:?}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let budget = Budget::default();
    let (mut checked, mut budget_hits, mut exhausted, mut invariant) = (0usize, 0usize, 0usize, 0usize);
    let mut disagreements = Vec::new();
    let mut by_reason = std::collections::BTreeMap::new();
    let mut bad_quotients = Vec::new();
    for g in family() {
        for v in subsets_up_to_symmetry(&g) {
            checked += 1;
            let m = Model::of_vertices(v.clone());
            let pi = properly_infinite(&g, &v).0 == PiVerdict::Pi;
            let answer = properly_infinite_bounded(&g, &m, budget).expect("plain vertex set");
            match &answer {
                OracleAnswer::Unknown { reason: UnknownReason::Budget, .. } => budget_hits += 1,
                OracleAnswer::Unknown { reason: UnknownReason::ClassExhausted, .. } => exhausted += 1,
                OracleAnswer::Unknown { reason: UnknownReason::Invariant, .. } => invariant += 1,
                OracleAnswer::Yes { .. } => {}
            }
            if pi != answer.is_yes() {
                let why = match answer {
                    OracleAnswer::Yes { .. } => "oracle yes, verdict not PI".to_string(),
                    OracleAnswer::Unknown { reason, states } => format!("{reason:?} after {states} states"),
                };
                *by_reason.entry(why.split(' ').next().unwrap_or_default().to_string()).or_insert(0) += 1;
                disagreements.push(format!("{:?} S={} V={}: {why}", g.rows(), g.relations(), v));
            }
            if !pi && !obstruction_image_is_finite(&g, &v) {
                bad_quotients.push(format!("{:?} V={}", g.rows(), v));
            }
        }
    }
    let mut detail = format!(
        "{checked} pairs, {} disagreements {by_reason:?}, {} bad obstruction quotients; unknown: {budget_hits} budget, {exhausted} exhausted, {invariant} invariant",
        disagreements.len(),
        bad_quotients.len()
    );
    for d in disagreements.iter().chain(&bad_quotients).take(3) {
        detail.push_str("\n    e.g. ");
        detail.push_str(d);
    }
    Outcome::new(disagreements.is_empty() && bad_quotients.is_empty(), detail)
}

fn obstruction_image_is_finite(g: &RelativeGraph, v: &VertexSet) -> bool {
    let Ok(witness) = fq_witness(g, v) else { return false };
    let (pair, _) = obstruction_pair(g, &witness);
    let Ok((q, qm)) = project_model_to_quotient(g, &Model::of_vertices(v.clone()), &pair) else {
        return false;
    };
    !qm.vertices().is_empty() && infinite_model(&q.graph, &qm) == Ok(Finiteness::Finite)
}

fn finiteness_dichotomy() -> Outcome {
    let (mut checked, mut violations) = (0usize, Vec::new());
    for g in family() {
        let pairs = enumerate_admissible_pairs(&g);
        for m in models(&g, 2) {
            if infinite_model(&g, &m) != Ok(Finiteness::Finite) {
                continue;
            }
            for ap in &pairs {
                checked += 1;
                let Ok((q, qm)) = project_model_to_quotient(&g, &m, ap) else {
                    violations.push(format!("{:?} {m} / {ap}: projection failed", g.rows()));
                    continue;
                };
                if !qm.vertices().is_empty() && infinite_model(&q.graph, &qm) != Ok(Finiteness::Finite) {
                    violations.push(format!("{:?} {m} / {ap}", g.rows()));
                }
            }
        }
    }
    let mut detail = format!("{checked} finite model quotients, {} violations", violations.len());
    if let Some(v) = violations.first() {
        detail.push_str(&format!("\n    e.g. {v}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

fn closure() -> Outcome {
    let (mut graphs, mut violations) = (0usize, Vec::new());
    for g in family() {
        graphs += 1;
        let sp = is_semiprojective(&g).semiprojective;
        if sp != is_semiprojective(&make_standard(&g)).semiprojective {
            violations.push(format!("{:?}: standard form", g.rows()));
        }
        if !sp {
            continue;
        }
        for ap in enumerate_admissible_pairs(&g) {
            if !quotient_graph(&g, &ap).is_ok_and(|q| is_semiprojective(&q.graph).semiprojective) {
                violations.push(format!("{:?}: quotient by {ap}", g.rows()));
            }
        }
        for m in models(&g, 2) {
            if corner_semiprojective(&g, &m) != Ok(true) {
                violations.push(format!("{:?}: corner {m}", g.rows()));
            }
        }
    }
    let mut detail = format!("{graphs} graphs, {} violations", violations.len());
    if let Some(v) = violations.first() {
        detail.push_str(&format!("\n    e.g. {v}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

fn amplified() -> Outcome {
    let graphs = amplified_graphs(3);
    let wrong: Vec<_> = graphs
        .iter()
        .filter(|g| amplified_semiprojective(g) != Ok(is_semiprojective(g).semiprojective))
        .collect();
    Outcome::new(wrong.is_empty(), format!("{} graphs, {} disagreements", graphs.len(), wrong.len()))
}

fn extension_fixtures() -> Outcome {
    let alpha = [Multiplicity::ZERO, Multiplicity::Fin(1), Multiplicity::Fin(2)];
    let regular: Vec<RelativeGraph> =
        small_graph_algebras(3, &alpha).filter(|g| g.regular_vertices() == g.vertices()).collect();
    let regular_ok = regular.iter().filter(|g| extension_safe(g)).count();
    let named = [
        ("C", c(), true),
        ("O2", cuntz2(), true),
        ("C^2", c2(), false),
        ("Toeplitz", toeplitz(), false),
        ("E2", cuntz_toeplitz2(), false),
    ];
    let wrong: Vec<&str> = named.iter().filter(|(_, g, want)| extension_safe(g) != *want).map(|(n, _, _)| *n).collect();
    Outcome::new(
        regular_ok == regular.len() && wrong.is_empty(),
        format!("{regular_ok} of {} regular graphs safe, named fixtures wrong: {:?}", regular.len(), wrong),
    )
}

fn one_ideal_family() -> Outcome {
    let mut wrong = Vec::new();
    for m in 0..3 {
        for n in 0..3 {
            let ok = one_ideal_check(&one_ideal_chain(m, n))
                .is_ok_and(|r| r.ideal_count == 3 && r.applicable && r.af && !r.semiprojective && r.consistent);
            if !ok {
                wrong.push(format!("m={m} n={n}"));
            }
        }
    }
    Outcome::new(wrong.is_empty(), format!("9 chains, wrong: {:?}", wrong))
}
