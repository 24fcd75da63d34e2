//! Enumeration of small facet systems and the atlas of their codes.
//!
//! A system of `k` facets is determined, up to renaming neurons, by how many
//! neurons have each membership pattern (the nonempty subsets of the `k`
//! facets). Enumerating multisets of patterns and keeping the least one
//! under facet permutations lists every antichain exactly once.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{canonicalize, max_intersection_faces, next_permutation, Codeword, NeuralCode, NeuronId};
use crate::decider::{decide_with, Certificate, DecideOptions, Status};
use crate::error::{Error, Result};
use crate::topology::{classify_small_complex, minimal_code, nerve};

/// Default caps on `--neurons` and `--facets`.
pub const NEURON_CAP: NeuronId = 6;
pub const FACET_CAP: usize = 4;

/// Every antichain of `k` nonempty sets whose union has at most
/// `max_neurons` elements, one per class under neuron relabeling. Neurons
/// are numbered `1..=|union|`.
pub fn facet_systems(max_neurons: NeuronId, k: usize) -> Vec<Vec<Codeword>> {
    assert!((1..=8).contains(&k), "facet count out of range");
    let patterns: Vec<u16> = (1..(1u16 << k)).collect();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let mut out = Vec::new();
    let mut seq: Vec<u16> = Vec::new();
    multisets(&patterns, 0, max_neurons as usize, &mut seq, &mut |s| {
        if is_antichain(s, k) && is_least(s, &perms) {
            out.push(to_facets(s, k));
        }
    });
    out
}

fn multisets(patterns: &[u16], from: usize, room: usize, seq: &mut Vec<u16>, emit: &mut dyn FnMut(&[u16])) {
    if !seq.is_empty() {
        emit(seq);
    }
    if room == 0 {
        return;
    }
    for i in from..patterns.len() {
        seq.push(patterns[i]);
        multisets(patterns, i, room - 1, seq, emit);
        seq.pop();
    }
}

fn is_antichain(seq: &[u16], k: usize) -> bool {
    let union = seq.iter().fold(0, |a, &b| a | b);
    if union.count_ones() as usize != k {
        return false;
    }
    // facet i is not inside facet j iff some neuron is in i but not j
    (0..k).all(|i| (0..k).all(|j| i == j || seq.iter().any(|&t| t >> i & 1 == 1 && t >> j & 1 == 0)))
}

fn permute(t: u16, perm: &[usize]) -> u16 {
    perm.iter().enumerate().fold(0, |acc, (i, &pi)| acc | ((t >> i & 1) << pi))
}

fn is_least(seq: &[u16], perms: &[Vec<usize>]) -> bool {
    let mut image = Vec::with_capacity(seq.len());
    perms.iter().all(|perm| {
        image.clear();
        image.extend(seq.iter().map(|&t| permute(t, perm)));
        image.sort_unstable();
        image.as_slice() >= seq
    })
}

fn to_facets(seq: &[u16], k: usize) -> Vec<Codeword> {
    let mut facets = vec![Codeword::EMPTY; k];
    for (j, &t) in seq.iter().enumerate() {
        for (i, f) in facets.iter_mut().enumerate() {
            if t >> i & 1 == 1 {
                f.insert(j as NeuronId + 1);
            }
        }
    }
    facets.sort();
    facets
}

/// Codes on a facet system with no local obstruction that sit between the
/// minimal code and the max-intersection-complete code: the minimal code
/// plus any subset of the missing facet intersections.
pub fn codes_between(facets: &[Codeword]) -> Vec<NeuralCode> {
    let base = minimal_code(facets);
    let extra: Vec<Codeword> = max_intersection_faces(facets).into_iter().filter(|w| !base.contains(*w)).collect();
    (0u64..1 << extra.len())
        .map(|mask| {
            let words = base
                .codewords()
                .iter()
                .copied()
                .chain(extra.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &w)| w));
            NeuralCode::new(words)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub code: String,
    pub n: NeuronId,
    pub facets: usize,
    pub nerve_class: String,
    pub minimal: bool,
    pub verdict: Status,
    pub certificate: String,
    pub sprocket: String,
}

#[derive(Clone, Copy, Debug)]
pub struct AtlasOptions {
    pub neurons: NeuronId,
    pub facets: usize,
    pub minimal_only: bool,
    pub allow_large: bool,
    pub budget: u64,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        AtlasOptions {
            neurons: 4,
            facets: 2,
            minimal_only: false,
            allow_large: false,
            budget: DecideOptions::default().budget,
        }
    }
}

pub struct Atlas {
    pub rows: Vec<AtlasRow>,
    /// Row counts per (nerve class, verdict).
    pub summary: BTreeMap<(String, Status), usize>,
}

fn row(code: &NeuralCode, budget: u64) -> (Vec<Codeword>, AtlasRow) {
    // every column, certificates included, refers to the canonical labeling
    let canon = canonicalize(code).code;
    let facets = &canon.facets()[..];
    let d = decide_with(&canon, DecideOptions { budget });
    let nerve_class = if facets.len() <= 4 {
        nerve(facets)
            .ok()
            .and_then(|n| classify_small_complex(&n).ok())
            .map(|c| c.class.to_string())
            .unwrap_or_default()
    } else {
        String::new()
    };
    let sprocket = d
        .certificates
        .iter()
        .find_map(|c| match c {
            Certificate::Sprocket { candidate } | Certificate::L24MinimalPoFSprocket { candidate } => {
                Some(candidate.to_string())
            }
            _ => None,
        })
        .unwrap_or_default();
    let kinds: Vec<&str> = d.certificates.iter().map(Certificate::kind).collect();
    let r = AtlasRow {
        code: canon.to_braced_text(),
        n: canon.support().len() as NeuronId,
        facets: facets.len(),
        nerve_class,
        minimal: minimal_code(facets).codewords() == canon.codewords(),
        verdict: d.status,
        certificate: kinds.join(";"),
        sprocket,
    };
    (canon.codewords().to_vec(), r)
}

/// Builds the atlas. Rows are deduplicated by canonical code and sorted by
/// neuron count, then canonical codewords.
pub fn atlas(opts: &AtlasOptions) -> Result<Atlas> {
    if opts.neurons == 0 || opts.facets == 0 {
        return Err(Error::Precondition("--neurons and --facets must be positive".to_string()));
    }
    if !opts.allow_large && (opts.neurons > NEURON_CAP || opts.facets > FACET_CAP) {
        return Err(Error::Precondition(format!(
            "atlas is capped at --neurons {NEURON_CAP} --facets {FACET_CAP}; pass --unsafe to go beyond"
        )));
    }
    if opts.neurons > crate::code::EXACT_CANONICAL_LIMIT || opts.facets > 8 {
        return Err(Error::Precondition(format!(
            "atlas supports at most {} neurons and 8 facets",
            crate::code::EXACT_CANONICAL_LIMIT
        )));
    }
    let systems = facet_systems(opts.neurons, opts.facets);
    let rows: Vec<((NeuronId, Vec<Codeword>), AtlasRow)> = systems
        .par_iter()
        .flat_map_iter(|facets| {
            let codes = if opts.minimal_only { vec![minimal_code(facets)] } else { codes_between(facets) };
            codes
                .into_iter()
                .map(|c| {
                    let (key, r) = row(&c, opts.budget);
                    ((r.n, key), r)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut sorted: BTreeMap<(NeuronId, Vec<Codeword>), AtlasRow> = BTreeMap::new();
    for (key, r) in rows {
        if seen.insert(key.clone()) {
            sorted.insert(key, r);
        }
    }
    let rows: Vec<AtlasRow> = sorted.into_values().collect();
    let mut summary = BTreeMap::new();
    for r in &rows {
        *summary.entry((r.nerve_class.clone(), r.verdict)).or_insert(0) += 1;
    }
    Ok(Atlas { rows, summary })
}

impl Atlas {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| Error::Document(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Document(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Document(e.to_string()))
    }

    /// Summary lines `class,verdict,count`, each prefixed with `# `.
    pub fn summary_text(&self) -> String {
        let mut s = String::from("# summary: nerve_class,verdict,rows\n");
        for ((class, status), count) in &self.summary {
            let class = if class.is_empty() { "-" } else { class };
            s.push_str(&format!("# {class},{status},{count}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: all antichains of k nonempty subsets of [n], deduped by
    /// exhaustive canonical form.
    fn brute(n: NeuronId, k: usize) -> BTreeSet<Vec<Codeword>> {
        let subsets: Vec<Codeword> = (1u128..1 << n).map(Codeword::from_bits).collect();
        let mut out = BTreeSet::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let sets: Vec<Codeword> = idx.iter().map(|&i| subsets[i]).collect();
            let anti = sets.iter().all(|a| sets.iter().all(|b| a == b || !a.is_subset(*b)));
            if anti {
                let c = canonicalize(&NeuralCode::new(sets.iter().copied()));
                out.insert(c.code.codewords().to_vec());
            }
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < subsets.len() - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (n, k) in [(3, 2), (4, 2), (4, 3), (3, 3)] {
            let mine: BTreeSet<Vec<Codeword>> = facet_systems(n, k)
                .into_iter()
                .map(|f| canonicalize(&NeuralCode::new(f)).code.codewords().to_vec())
                .collect();
            let count = facet_systems(n, k).len();
            assert_eq!(count, mine.len(), "duplicates for n={n} k={k}");
            assert_eq!(mine, brute(n, k), "n={n} k={k}");
        }
    }

    #[test]
    fn two_facet_rows_are_convex() {
        let a = atlas(&AtlasOptions { neurons: 4, facets: 2, ..Default::default() }).unwrap();
        assert!(!a.rows.is_empty());
        assert!(a.rows.iter().all(|r| r.verdict == Status::Convex));
    }

    #[test]
    fn caps() {
        assert!(atlas(&AtlasOptions { neurons: 7, facets: 2, ..Default::default() }).is_err());
        assert!(atlas(&AtlasOptions { neurons: 3, facets: 5, ..Default::default() }).is_err());
    }

    #[test]
    fn csv_braces_codewords() {
        let a = atlas(&AtlasOptions { neurons: 2, facets: 2, ..Default::default() }).unwrap();
        let csv = a.to_csv().unwrap();
        assert_eq!(csv, "code,n,facets,nerve_class,minimal,verdict,certificate,sprocket\n\"{1},{2}\",2,2,L2,true,CONVEX,MaxIntersectionComplete,\n");
    }
}
