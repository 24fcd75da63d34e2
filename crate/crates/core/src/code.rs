//! Codewords, neural codes and facet-intersection combinatorics.
//!
//! A [`Codeword`] is a finite set of neurons stored as a bitmask, so neuron
//! indices are limited to `1..=MAX_NEURONS`. Codewords order canonically by
//! size first and then lexicographically on their sorted indices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Neuron indices are 1-based.
pub type NeuronId = u32;

/// Largest neuron index a [`Codeword`] can hold.
pub const MAX_NEURONS: NeuronId = 128;

/// A set of neurons.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword(u128);

impl Codeword {
    pub const EMPTY: Codeword = Codeword(0);

    /// Builds a codeword, rejecting index 0 and indices above [`MAX_NEURONS`].
    pub fn new<I: IntoIterator<Item = NeuronId>>(neurons: I) -> Result<Self> {
        let mut bits = 0u128;
        for i in neurons {
            if i == 0 || i > MAX_NEURONS {
                return Err(Error::NeuronOutOfRange(i));
            }
            bits |= 1u128 << (i - 1);
        }
        Ok(Codeword(bits))
    }

    /// Panicking constructor for literals in tests and tables.
    pub fn from_slice(neurons: &[NeuronId]) -> Self {
        Self::new(neurons.iter().copied()).expect("neuron index out of range")
    }

    /// Parses a compact digit string such as `"1357"`. Test helper.
    pub fn digits(s: &str) -> Self {
        Self::from_slice(&s.bytes().map(|b| NeuronId::from(b - b'0')).collect::<Vec<_>>())
    }

    pub const fn from_bits(bits: u128) -> Self {
        Codeword(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, neuron: NeuronId) -> bool {
        (1..=MAX_NEURONS).contains(&neuron) && self.0 & (1u128 << (neuron - 1)) != 0
    }

    pub fn insert(&mut self, neuron: NeuronId) {
        assert!((1..=MAX_NEURONS).contains(&neuron));
        self.0 |= 1u128 << (neuron - 1);
    }

    pub fn is_subset(self, other: Codeword) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Codeword) -> Codeword {
        Codeword(self.0 | other.0)
    }

    pub fn intersection(self, other: Codeword) -> Codeword {
        Codeword(self.0 & other.0)
    }

    pub fn difference(self, other: Codeword) -> Codeword {
        Codeword(self.0 & !other.0)
    }

    /// Largest neuron index, or 0 for the empty codeword.
    pub fn max_neuron(self) -> NeuronId {
        128 - self.0.leading_zeros()
    }

    /// Neurons in ascending order.
    pub fn iter(self) -> impl Iterator<Item = NeuronId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<NeuronId> {
        self.iter().collect()
    }

    /// Applies a neuron relabeling; `perm[i - 1]` is the new label of neuron `i`.
    pub fn relabel(self, perm: &[NeuronId]) -> Codeword {
        let mut out = 0u128;
        for i in self.iter() {
            out |= 1u128 << (perm[(i - 1) as usize] - 1);
        }
        Codeword(out)
    }

    /// Compact digit form when every neuron is at most 9, braced otherwise.
    pub fn to_text(self) -> String {
        if self.max_neuron() <= 9 && !self.is_empty() {
            self.iter().map(|i| char::from(b'0' + i as u8)).collect()
        } else {
            self.to_braced()
        }
    }

    pub fn to_braced(self) -> String {
        let inner: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl Ord for Codeword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_braced())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("{}")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

impl serde::Serialize for Codeword {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for Codeword {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<NeuronId> = serde::Deserialize::deserialize(d)?;
        Codeword::new(v).map_err(serde::de::Error::custom)
    }
}

/// A neural code: a set of codewords that always contains the empty codeword.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NeuralCode {
    n: NeuronId,
    words: Vec<Codeword>,
}

impl NeuralCode {
    /// Builds a code with `n` derived from the largest index present.
    pub fn new<I: IntoIterator<Item = Codeword>>(words: I) -> Self {
        let mut words: Vec<Codeword> = words.into_iter().collect();
        words.push(Codeword::EMPTY);
        words.sort();
        words.dedup();
        let n = words.iter().map(|w| w.max_neuron()).max().unwrap_or(0);
        NeuralCode { n, words }
    }

    /// Builds a code on an explicitly declared neuron count.
    pub fn with_neurons<I: IntoIterator<Item = Codeword>>(n: NeuronId, words: I) -> Result<Self> {
        let mut code = Self::new(words);
        if n < code.n {
            return Err(Error::DeclaredNeuronsTooSmall { declared: n, max: code.n });
        }
        if n > MAX_NEURONS {
            return Err(Error::NeuronOutOfRange(n));
        }
        code.n = n;
        Ok(code)
    }

    /// Test helper: `NeuralCode::digits(&["123", "12"])`.
    pub fn digits(words: &[&str]) -> Self {
        Self::new(words.iter().map(|w| Codeword::digits(w)))
    }

    pub fn n(&self) -> NeuronId {
        self.n
    }

    /// Codewords in canonical order; the first one is always the empty codeword.
    pub fn codewords(&self) -> &[Codeword] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.len() <= 1
    }

    pub fn contains(&self, c: Codeword) -> bool {
        self.words.binary_search(&c).is_ok()
    }

    /// Union of all codewords.
    pub fn support(&self) -> Codeword {
        self.words.iter().fold(Codeword::EMPTY, |acc, &w| acc.union(w))
    }

    /// True when some neuron in `1..=n` appears in no codeword.
    pub fn has_unused_neurons(&self) -> bool {
        self.support().len() != self.n as usize
    }

    pub fn with_codeword(&self, c: Codeword) -> NeuralCode {
        let mut words = self.words.clone();
        words.push(c);
        let mut out = NeuralCode::new(words);
        out.n = out.n.max(self.n);
        out
    }

    pub fn without_codeword(&self, c: Codeword) -> NeuralCode {
        let words = self.words.iter().copied().filter(|&w| w != c);
        let mut out = NeuralCode::new(words);
        out.n = self.n;
        out
    }

    /// Inclusion-maximal nonempty codewords.
    pub fn facets(&self) -> Vec<Codeword> {
        maximal_codewords(self)
    }

    /// Applies a neuron relabeling (`perm[i - 1]` is the new label of `i`).
    pub fn relabel(&self, perm: &[NeuronId]) -> NeuralCode {
        let mut out = NeuralCode::new(self.words.iter().map(|w| w.relabel(perm)));
        out.n = self.n;
        out
    }

    /// Canonical text: codewords sorted by size then lexicographically.
    /// The empty codeword is printed as `{}` only when `verbose` is set.
    pub fn to_text(&self, verbose: bool) -> String {
        let braced = self.n > 9;
        let toks: Vec<String> = self
            .words
            .iter()
            .filter(|w| verbose || !w.is_empty())
            .map(|w| {
                if w.is_empty() {
                    "{}".to_string()
                } else if braced {
                    w.to_braced()
                } else {
                    w.to_text()
                }
            })
            .collect();
        toks.join(",")
    }

    /// Canonical text with every codeword braced.
    pub fn to_braced_text(&self) -> String {
        self.words
            .iter()
            .filter(|w| !w.is_empty())
            .map(|w| w.to_braced())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for NeuralCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

impl std::str::FromStr for NeuralCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_code(s)
    }
}

/// Parses the textual code grammar.
///
/// Codewords are separated by commas, semicolons or whitespace. A codeword is
/// either a compact digit string (`1357`) or a braced list (`{1,3,12}`). The
/// empty codeword is always added.
pub fn parse_code(text: &str) -> Result<NeuralCode> {
    let bytes = text.as_bytes();
    let mut words = Vec::new();
    // compact tokens with more than one digit, kept for the ambiguity check
    let mut multi_digit_compact: Option<usize> = None;
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b',' | b';' => i += 1,
            b if b.is_ascii_whitespace() => i += 1,
            b'{' => {
                let start = i;
                let close = text[i..]
                    .find('}')
                    .map(|off| i + off)
                    .ok_or_else(|| Error::parse(start, "unterminated '{'"))?;
                let inner = &text[i + 1..close];
                let mut neurons = Vec::new();
                let mut pos = i + 1;
                for part in inner.split([',', ';', ' ', '\t']) {
                    if !part.trim().is_empty() {
                        let t = part.trim();
                        let v: i64 = t
                            .parse()
                            .map_err(|_| Error::parse(pos, format!("invalid neuron index '{t}'")))?;
                        if v <= 0 {
                            return Err(Error::parse(pos, format!("neuron index must be positive, got {v}")));
                        }
                        if v > i64::from(MAX_NEURONS) {
                            return Err(Error::parse(pos, format!("neuron index {v} exceeds {MAX_NEURONS}")));
                        }
                        let v = v as NeuronId;
                        if neurons.contains(&v) {
                            return Err(Error::parse(pos, format!("duplicate neuron {v} in codeword")));
                        }
                        neurons.push(v);
                    }
                    pos += part.len() + 1;
                }
                words.push(Codeword::new(neurons)?);
                i = close + 1;
            }
            b'0'..=b'9' => {
                let start = i;
                let mut c = Codeword::EMPTY;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    let d = NeuronId::from(bytes[i] - b'0');
                    if d == 0 {
                        return Err(Error::parse(i, "neuron index 0 is not allowed"));
                    }
                    if c.contains(d) {
                        return Err(Error::parse(i, format!("duplicate neuron {d} in compact codeword")));
                    }
                    c.insert(d);
                    i += 1;
                }
                if i < bytes.len() && !(bytes[i] == b',' || bytes[i] == b';' || bytes[i].is_ascii_whitespace()) {
                    return Err(Error::parse(i, format!("unexpected character '{}'", bytes[i] as char)));
                }
                if i - start > 1 && multi_digit_compact.is_none() {
                    multi_digit_compact = Some(start);
                }
                words.push(c);
            }
            b'-' => return Err(Error::parse(i, "negative neuron index")),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(i, format!("unexpected character '{ch}'")));
            }
        }
    }
    let code = NeuralCode::new(words);
    if code.n() > 9 {
        if let Some(pos) = multi_digit_compact {
            return Err(Error::parse(
                pos,
                "compact multi-digit codeword is ambiguous when a neuron index exceeds 9; use braces",
            ));
        }
    }
    Ok(code)
}

/// Inclusion-maximal nonempty codewords in canonical order.
pub fn maximal_codewords(code: &NeuralCode) -> Vec<Codeword> {
    maximal_sets(code.codewords())
}

/// Inclusion-maximal nonempty sets of a family, deduplicated and sorted.
pub fn maximal_sets(sets: &[Codeword]) -> Vec<Codeword> {
    let mut uniq: Vec<Codeword> = sets.iter().copied().filter(|c| !c.is_empty()).collect();
    uniq.sort();
    uniq.dedup();
    uniq.iter()
        .copied()
        .filter(|&c| !uniq.iter().any(|&d| d != c && c.is_subset(d)))
        .collect()
}

/// Codewords containing `sigma`.
pub fn trunk(code: &NeuralCode, sigma: Codeword) -> BTreeSet<Codeword> {
    code.codewords().iter().copied().filter(|c| sigma.is_subset(*c)).collect()
}

/// Membership in the simplicial complex generated by `facets`.
pub fn is_face(facets: &[Codeword], sigma: Codeword) -> bool {
    sigma.is_empty() || facets.iter().any(|&f| sigma.is_subset(f))
}

/// Nonempty intersections of two or more facets, keyed by facet-index subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetIntersectionTable {
    /// Keys are bitmasks over facet positions (bit `i` = facet `i`).
    pub entries: BTreeMap<u64, Codeword>,
}

impl FacetIntersectionTable {
    /// Intersections over every subset of at least two facets; only practical
    /// for small facet counts.
    pub fn new(facets: &[Codeword]) -> Self {
        assert!(facets.len() < 24, "facet intersection table is exponential in the facet count");
        let m = facets.len();
        let mut entries = BTreeMap::new();
        for mask in 1u64..(1u64 << m) {
            if mask.count_ones() < 2 {
                continue;
            }
            let mut acc: Option<Codeword> = None;
            for (i, &f) in facets.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    acc = Some(acc.map_or(f, |a| a.intersection(f)));
                }
            }
            entries.insert(mask, acc.unwrap_or_default());
        }
        FacetIntersectionTable { entries }
    }

    pub fn nonempty(&self) -> BTreeSet<Codeword> {
        self.entries.values().copied().filter(|c| !c.is_empty()).collect()
    }
}

/// All nonempty intersections of two or more facets, deduplicated.
///
/// Computed by closing pairwise intersections under further intersection,
/// which avoids enumerating every facet subset.
pub fn max_intersection_faces(facets: &[Codeword]) -> BTreeSet<Codeword> {
    let mut out: BTreeSet<Codeword> = BTreeSet::new();
    if facets.len() < 2 {
        return out;
    }
    // Each element remembers which facets it has been intersected with, so a
    // further intersection always adds a new facet.
    let mut frontier: Vec<Codeword> = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let c = facets[i].intersection(facets[j]);
            if !c.is_empty() && out.insert(c) {
                frontier.push(c);
            }
        }
    }
    while let Some(c) = frontier.pop() {
        for &f in facets {
            let d = c.intersection(f);
            if !d.is_empty() && d != c && out.insert(d) {
                frontier.push(d);
            }
        }
    }
    out
}

/// Whether the code contains every max-intersection face; also returns the
/// missing ones.
pub fn is_max_intersection_complete(code: &NeuralCode) -> (bool, BTreeSet<Codeword>) {
    let facets = code.facets();
    let missing: BTreeSet<Codeword> = max_intersection_faces(&facets)
        .into_iter()
        .filter(|c| !code.contains(*c))
        .collect();
    (missing.is_empty(), missing)
}

/// Output of [`canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub code: NeuralCode,
    /// `permutation[i - 1]` is the canonical label of input neuron `i`.
    pub permutation: Vec<NeuronId>,
    /// True when every relabeling was searched, so `code` is the
    /// lexicographically least relabeling.
    pub exact: bool,
}

/// Neuron counts up to this bound are canonicalized by exhaustive search.
pub const EXACT_CANONICAL_LIMIT: NeuronId = 8;

/// Lexicographically least relabeling of the code.
///
/// Exhaustive over all `n!` relabelings for `n <= 8`. Larger codes are ordered
/// by a neuron-invariant refinement with ties broken by index; the result is
/// then flagged inexact.
pub fn canonicalize(code: &NeuralCode) -> Canonical {
    let n = code.n() as usize;
    if n as NeuronId <= EXACT_CANONICAL_LIMIT {
        let mut best: Option<(Vec<Codeword>, Vec<NeuronId>)> = None;
        let mut perm: Vec<NeuronId> = (1..=n as NeuronId).collect();
        loop {
            let mut words: Vec<Codeword> = code.codewords().iter().map(|w| w.relabel(&perm)).collect();
            words.sort();
            let better = match &best {
                None => true,
                Some((b, _)) => words < *b,
            };
            if better {
                best = Some((words, perm.clone()));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let (_, perm) = best.unwrap_or_default();
        let perm = if perm.is_empty() { Vec::new() } else { perm };
        let out = code.relabel(&perm);
        Canonical { code: out, permutation: perm, exact: true }
    } else {
        // Refinement: sort neurons by their membership profile (how many
        // codewords of each size contain them), then by index.
        let mut keyed: Vec<(Vec<usize>, NeuronId)> = (1..=n as NeuronId)
            .map(|i| {
                let mut profile = vec![0usize; n + 1];
                for w in code.codewords() {
                    if w.contains(i) {
                        profile[w.len()] += 1;
                    }
                }
                // more frequent neurons get smaller labels
                let key: Vec<usize> = profile.iter().map(|&c| usize::MAX - c).collect();
                (key, i)
            })
            .collect();
        keyed.sort();
        let mut perm = vec![0; n];
        for (rank, (_, i)) in keyed.iter().enumerate() {
            perm[(*i - 1) as usize] = rank as NeuronId + 1;
        }
        let out = code.relabel(&perm);
        Canonical { code: out, permutation: perm, exact: false }
    }
}

/// Advances to the next lexicographic permutation; false when wrapped.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> Codeword {
        Codeword::digits(s)
    }

    fn set(words: &[&str]) -> BTreeSet<Codeword> {
        words.iter().map(|w| cw(w)).collect()
    }

    fn c22() -> NeuralCode {
        parse_code("134,1357,257,356,13,35,57").unwrap()
    }

    fn c24() -> NeuralCode {
        parse_code("123,1246,145,356,12,14,3,5,6").unwrap()
    }

    #[test]
    fn codeword_order_is_size_then_lex() {
        let mut v = vec![cw("23"), cw("1"), cw("13"), cw("123"), cw("3")];
        v.push(Codeword::EMPTY);
        v.sort();
        assert_eq!(v, vec![Codeword::EMPTY, cw("1"), cw("3"), cw("13"), cw("23"), cw("123")]);
        assert!(cw("134") < cw("257"));
        assert!(cw("257") < cw("356"));
    }

    #[test]
    fn parse_example_codes() {
        let c = c22();
        assert_eq!(c.len(), 8);
        assert_eq!(c.n(), 7);
        assert!(c.contains(Codeword::EMPTY));
        let c = c24();
        assert_eq!(c.len(), 10);
        assert_eq!(c.n(), 6);
    }

    #[test]
    fn parse_braced_and_dedup() {
        let c = parse_code("{1,2},{2}; {2} 12").unwrap();
        assert_eq!(c.codewords(), &[Codeword::EMPTY, cw("2"), cw("12")]);
        assert_eq!(c.n(), 2);
        let big = parse_code("{1,12},{3}").unwrap();
        assert_eq!(big.n(), 12);
        assert_eq!(big.to_text(false), "{3},{1,12}");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_code("102"), Err(Error::Parse { pos: 1, .. })));
        assert!(parse_code("{0,1}").is_err());
        assert!(parse_code("{-1}").is_err());
        assert!(parse_code("-1").is_err());
        assert!(parse_code("1a").is_err());
        assert!(parse_code("{1,2").is_err());
        assert!(parse_code("11").is_err());
        // a multi-digit compact token next to a neuron above 9 is ambiguous
        assert!(parse_code("12,{10}").is_err());
        // single-digit compact tokens stay legal
        assert!(parse_code("1,{10}").is_ok());
    }

    #[test]
    fn format_roundtrip_and_verbose() {
        let c = c24();
        let text = c.to_text(false);
        assert_eq!(text, "3,5,6,12,14,123,145,356,1246");
        assert_eq!(parse_code(&text).unwrap(), c);
        assert!(c.to_text(true).starts_with("{},"));
        assert_eq!(parse_code(&c.to_braced_text()).unwrap(), c);
    }

    #[test]
    fn maximal_codewords_examples() {
        assert_eq!(c22().facets(), vec![cw("134"), cw("257"), cw("356"), cw("1357")]);
        assert!(NeuralCode::new([]).facets().is_empty());
        assert_eq!(NeuralCode::digits(&["1", "12"]).facets(), vec![cw("12")]);
    }

    #[test]
    fn trunk_examples() {
        let c = c24();
        assert_eq!(trunk(&c, cw("1")), set(&["123", "1246", "145", "12", "14"]));
        assert_eq!(trunk(&c, Codeword::EMPTY).len(), c.len());
        assert_eq!(trunk(&c, cw("12")), set(&["12", "123", "1246"]));
    }

    #[test]
    fn is_face_examples() {
        let f = c24().facets();
        assert!(!is_face(&f, cw("1356")));
        assert!(is_face(&f, Codeword::EMPTY));
        assert!(is_face(&f, cw("16")));
    }

    #[test]
    fn max_intersection_examples() {
        assert_eq!(max_intersection_faces(&c22().facets()), set(&["13", "3", "35", "5", "57"]));
        assert_eq!(max_intersection_faces(&c24().facets()), set(&["1", "12", "14", "3", "6", "5"]));
        assert!(max_intersection_faces(&[cw("12"), cw("34")]).is_empty());
        assert!(max_intersection_faces(&[cw("12")]).is_empty());
    }

    #[test]
    fn intersection_table_matches_closure() {
        for code in [c22(), c24()] {
            let f = code.facets();
            let table = FacetIntersectionTable::new(&f);
            assert_eq!(table.nonempty(), max_intersection_faces(&f));
            // entries shrink as the index set grows
            for (&s, &c) in &table.entries {
                for (&t, &d) in &table.entries {
                    if s & t == t {
                        assert!(c.is_subset(d));
                    }
                }
            }
        }
    }

    #[test]
    fn max_intersection_complete_examples() {
        assert_eq!(is_max_intersection_complete(&c22()), (false, set(&["3", "5"])));
        assert_eq!(is_max_intersection_complete(&c24()), (false, set(&["1"])));
        assert_eq!(is_max_intersection_complete(&c24().with_codeword(cw("1"))), (true, BTreeSet::new()));
    }

    #[test]
    fn canonicalize_examples() {
        let c = NeuralCode::digits(&["2"]);
        let can = canonicalize(&c);
        assert_eq!(can.code.codewords(), &[Codeword::EMPTY, cw("1")]);
        assert_eq!(can.permutation, vec![2, 1]);
        assert!(can.exact);

        let c = NeuralCode::digits(&["12", "13"]);
        assert_eq!(canonicalize(&c).code, c);

        let once = canonicalize(&c24()).code;
        assert_eq!(canonicalize(&once).code, once);
        assert_eq!(c24().relabel(&canonicalize(&c24()).permutation), once);
    }

    #[test]
    fn canonicalize_large_is_flagged_inexact() {
        let c = parse_code("{1,2,9},{9,10}").unwrap();
        let can = canonicalize(&c);
        assert!(!can.exact);
        assert_eq!(can.code.len(), c.len());
        assert_eq!(canonicalize(&can.code).code.len(), c.len());
    }

    #[test]
    fn permutations_enumerate_all() {
        let mut v = vec![1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, vec![1, 2, 3, 4]);
    }
}
