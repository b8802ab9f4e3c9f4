use serde::Serialize;
use thiserror::Error;

use super::is_semiprojective;
use crate::ext_nat::Multiplicity;
use crate::graph::RelativeGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("{base}^({n}*{n}) matrices do not fit in a 64-bit index")]
    TooLarge { base: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub index: u64,
    pub adj: Vec<Vec<Multiplicity>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub alphabet: Vec<Multiplicity>,
    pub total: u64,
    pub non_semiprojective: Vec<CensusEntry>,
}

fn matrix_count(n: usize, base: usize) -> Result<u64, CensusError> {
    if base == 0 {
        return Err(CensusError::EmptyAlphabet);
    }
    u32::try_from(n * n)
        .ok()
        .and_then(|e| (base as u64).checked_pow(e))
        .ok_or(CensusError::TooLarge { base, n })
}

/// The `index`-th n×n matrix over `alphabet` in row-major order, the first
/// entry being the most significant digit.
pub fn matrix_at(n: usize, alphabet: &[Multiplicity], mut index: u64) -> Vec<Vec<Multiplicity>> {
    let base = alphabet.len() as u64;
    let mut flat = vec![Multiplicity::ZERO; n * n];
    for slot in flat.iter_mut().rev() {
        *slot = alphabet[(index % base) as usize];
        index /= base;
    }
    flat.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect()
}

fn scan(n: usize, alphabet: &[Multiplicity], lo: u64, hi: u64) -> Vec<CensusEntry> {
    (lo..hi)
        .filter_map(|index| {
            let adj = matrix_at(n, alphabet, index);
            let g = RelativeGraph::graph_algebra(adj.clone()).expect("square by construction");
            (!is_semiprojective(&g).semiprojective).then_some(CensusEntry { index, adj })
        })
        .collect()
}

/// Every n×n matrix over `alphabet`, with S the regular vertices, checked for
/// semiprojectivity. Lists the failures in enumeration order regardless of
/// the number of workers.
pub fn census(n: usize, alphabet: &[Multiplicity], workers: usize) -> Result<CensusReport, CensusError> {
    let total = matrix_count(n, alphabet.len())?;
    let workers = (workers.max(1) as u64).min(total.max(1));
    let chunk = total.div_ceil(workers);
    let mut parts: Vec<(u64, Vec<CensusEntry>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let lo = (k * chunk).min(total);
                let hi = ((k + 1) * chunk).min(total);
                (lo, s.spawn(move || scan(n, alphabet, lo, hi)))
            })
            .collect();
        handles
            .into_iter()
            .map(|(lo, h)| (lo, h.join().expect("census worker panicked")))
            .collect()
    });
    parts.sort_by_key(|(lo, _)| *lo);
    Ok(CensusReport {
        n,
        alphabet: alphabet.to_vec(),
        total,
        non_semiprojective: parts.into_iter().flat_map(|(_, v)| v).collect(),
    })
}
