//! Partial-wheels and sprockets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::code::{is_face, max_intersection_faces, Codeword, NeuralCode, NeuronId};
use crate::topology::{classify_small_complex, nerve, path_of_facets};

/// A tuple `(σ1, σ2, σ3, τ)` with witnesses `ρ1`, `ρ3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SprocketCandidate {
    pub sigma: [Codeword; 3],
    pub tau: Codeword,
    pub rho1: Codeword,
    pub rho3: Codeword,
}

impl SprocketCandidate {
    pub fn new(sigma: [Codeword; 3], tau: Codeword, rho1: Codeword, rho3: Codeword) -> Self {
        SprocketCandidate { sigma, tau, rho1, rho3 }
    }

    pub fn relabel(&self, perm: &[NeuronId]) -> Self {
        SprocketCandidate {
            sigma: self.sigma.map(|s| s.relabel(perm)),
            tau: self.tau.relabel(perm),
            rho1: self.rho1.relabel(perm),
            rho3: self.rho3.relabel(perm),
        }
    }

    fn map(&self, f: impl Fn(Codeword) -> Codeword) -> Self {
        SprocketCandidate {
            sigma: self.sigma.map(&f),
            tau: f(self.tau),
            rho1: f(self.rho1),
            rho3: f(self.rho3),
        }
    }
}

impl fmt::Display for SprocketCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}, {}, {}, {}), ({}, {}))",
            self.sigma[0], self.sigma[1], self.sigma[2], self.tau, self.rho1, self.rho3
        )
    }
}

/// The partial-wheel and sprocket conditions, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    PI,
    PII,
    PIIICirc,
    S1,
    S2,
    S3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::PI => "P(i)",
            Condition::PII => "P(ii)",
            Condition::PIIICirc => "P(iii)o",
            Condition::S1 => "S(1)",
            Condition::S2 => "S(2)",
            Condition::S3 => "S(3)",
        })
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcome of a predicate, naming the first condition that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WheelCheck {
    pub holds: bool,
    pub failed: Option<Condition>,
}

impl WheelCheck {
    fn pass() -> Self {
        WheelCheck { holds: true, failed: None }
    }

    fn fail(c: Condition) -> Self {
        WheelCheck { holds: false, failed: Some(c) }
    }
}

/// Trunks as bitsets over the codewords of a code.
struct Trunks<'a> {
    words: &'a [Codeword],
    facets: Vec<Codeword>,
}

type Bits = Vec<u64>;

impl<'a> Trunks<'a> {
    fn new(code: &'a NeuralCode) -> Self {
        Trunks { words: code.codewords(), facets: code.facets() }
    }

    fn trunk(&self, sigma: Codeword) -> Bits {
        let mut bits = vec![0u64; self.words.len().div_ceil(64)];
        for (i, w) in self.words.iter().enumerate() {
            if sigma.is_subset(*w) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    }

    /// Intersection of all codewords in the trunk, or `None` if it is empty.
    fn meet(&self, sigma: Codeword) -> Option<Codeword> {
        self.words
            .iter()
            .filter(|w| sigma.is_subset(**w))
            .fold(None, |acc: Option<Codeword>, &w| Some(acc.map_or(w, |a| a.intersection(w))))
    }

    fn face(&self, sigma: Codeword) -> bool {
        is_face(&self.facets, sigma)
    }
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn union(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

fn partial_wheel_with(t: &Trunks, s: [Codeword; 3], tau: Codeword) -> WheelCheck {
    let s123 = s[0].union(s[1]).union(s[2]);
    if !t.face(s123) {
        return WheelCheck::fail(Condition::PI);
    }
    let whole = t.trunk(s123);
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        if t.trunk(s[j].union(s[k])) != whole {
            return WheelCheck::fail(Condition::PI);
        }
    }
    if t.face(s123.union(tau)) {
        return WheelCheck::fail(Condition::PII);
    }
    if s.iter().any(|&sj| !t.face(sj.union(tau))) {
        return WheelCheck::fail(Condition::PIIICirc);
    }
    WheelCheck::pass()
}

fn sprocket_with(t: &Trunks, c: &SprocketCandidate) -> WheelCheck {
    let pw = partial_wheel_with(t, c.sigma, c.tau);
    if !pw.holds {
        return pw;
    }
    // witnesses must be faces as well
    if !t.face(c.rho1) || !t.face(c.rho3) {
        return WheelCheck::fail(Condition::S1);
    }
    let r1 = t.trunk(c.rho1);
    let r3 = t.trunk(c.rho3);
    if !subset(&t.trunk(c.sigma[0].union(c.tau)), &r1) || !subset(&t.trunk(c.sigma[2].union(c.tau)), &r3) {
        return WheelCheck::fail(Condition::S1);
    }
    if !subset(&t.trunk(c.tau), &union(&r1, &r3)) {
        return WheelCheck::fail(Condition::S2);
    }
    if !subset(&t.trunk(c.rho1.union(c.rho3).union(c.tau)), &t.trunk(c.sigma[1])) {
        return WheelCheck::fail(Condition::S3);
    }
    WheelCheck::pass()
}

/// Conditions P(i), P(ii) and P(iii)o.
pub fn is_partial_wheel(code: &NeuralCode, s1: Codeword, s2: Codeword, s3: Codeword, tau: Codeword) -> WheelCheck {
    partial_wheel_with(&Trunks::new(code), [s1, s2, s3], tau)
}

/// Partial-wheel conditions followed by S(1)-S(3).
pub fn is_sprocket(code: &NeuralCode, cand: &SprocketCandidate) -> WheelCheck {
    sprocket_with(&Trunks::new(code), cand)
}

/// The sprocket built in the proof for minimal L24 codes with a path of facets.
///
/// F4 is the facet outside the 2-simplex of the nerve and F2 is the middle
/// facet of the path. The candidate is validated before it is returned.
pub fn canonical_l24_sprocket(code: &NeuralCode) -> Option<SprocketCandidate> {
    let facets = code.facets();
    if facets.len() != 4 {
        return None;
    }
    let classified = classify_small_complex(&nerve(&facets).ok()?).ok()?;
    if classified.class.id() != 24 {
        return None;
    }
    let f4_index = classified.input_vertex(4)? as usize - 1;
    let f4 = facets[f4_index];
    let tri: Vec<Codeword> =
        facets.iter().enumerate().filter(|&(i, _)| i != f4_index).map(|(_, &f)| f).collect();
    let w = path_of_facets(tri[0], tri[1], tri[2]).ok()??;
    let (f1, f2, f3) = (tri[w.a - 1], tri[w.b - 1], tri[w.c - 1]);
    let cand = SprocketCandidate {
        sigma: [f1.intersection(f4), f2.intersection(f4), f3.intersection(f4)],
        tau: f1.intersection(f2).intersection(f3),
        rho1: f1.intersection(f2),
        rho3: f3.intersection(f2),
    };
    is_sprocket(code, &cand).holds.then_some(cand)
}

/// Default cap on condition evaluations in [`find_sprocket`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest face size added to the σ pool beyond facet intersections.
pub const DEFAULT_SIGMA_BOUND: usize = 1;

/// Result of a bounded sprocket search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SprocketSearch {
    pub found: Option<SprocketCandidate>,
    pub evaluations: u64,
    /// True when the budget ran out before the search space was exhausted.
    pub exhausted: bool,
}

/// Bounded search for a sprocket; `None` means none was found within budget.
pub fn find_sprocket(code: &NeuralCode, budget: u64) -> Option<SprocketCandidate> {
    search_sprocket(code, budget).found
}

/// Like [`find_sprocket`], also reporting how much of the budget was used.
pub fn search_sprocket(code: &NeuralCode, budget: u64) -> SprocketSearch {
    if let Some(c) = canonical_l24_sprocket(code) {
        return SprocketSearch { found: Some(c), evaluations: 0, exhausted: false };
    }
    if let Some(c) = cone_sprocket(code, budget) {
        return SprocketSearch { found: Some(c), evaluations: 0, exhausted: false };
    }
    generic_search(code, budget, DEFAULT_SIGMA_BOUND)
}

/// Strips a neuron shared by every nonempty codeword, searches the smaller
/// code, and lifts the candidate back.
fn cone_sprocket(code: &NeuralCode, budget: u64) -> Option<SprocketCandidate> {
    let words: Vec<Codeword> = code.codewords().iter().copied().filter(|w| !w.is_empty()).collect();
    let apex = words.iter().skip(1).fold(*words.first()?, |a, &w| a.intersection(w));
    let k = apex.iter().next()?;
    let apex_word = Codeword::from_slice(&[k]);
    let stripped = NeuralCode::new(words.iter().map(|w| w.difference(apex_word)));
    let inner = if let Some(c) = canonical_l24_sprocket(&stripped) {
        c
    } else if let Some(c) = cone_sprocket(&stripped, budget) {
        c
    } else {
        generic_search(&stripped, budget, DEFAULT_SIGMA_BOUND).found?
    };
    let t = Trunks::new(code);
    [inner, inner.map(|c| c.union(apex_word))]
        .into_iter()
        .find(|c| sprocket_with(&t, c).holds)
}

fn subsets_of(c: Codeword) -> Vec<Codeword> {
    let mut out = Vec::new();
    let mask = c.bits();
    let mut sub = mask;
    loop {
        out.push(Codeword::from_bits(sub));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out.sort();
    out
}

/// Exhaustive search over restricted pools with incremental pruning.
///
/// τ ranges over max-intersection faces missing from the code; σ's over
/// facet intersections, facets and faces of size at most `sigma_bound`.
/// Witnesses are drawn from subsets of the meet of the trunk they must
/// contain, which loses nothing.
pub fn generic_search(code: &NeuralCode, budget: u64, sigma_bound: usize) -> SprocketSearch {
    let t = Trunks::new(code);
    let facets = code.facets();
    let inter = max_intersection_faces(&facets);
    let taus: Vec<Codeword> = inter.iter().copied().filter(|c| !code.contains(*c)).collect();

    let mut pool: BTreeSet<Codeword> = inter.clone();
    pool.extend(facets.iter().copied());
    for &f in &facets {
        for s in subsets_of(f) {
            if !s.is_empty() && s.len() <= sigma_bound {
                pool.insert(s);
            }
        }
    }
    let pool: Vec<Codeword> = pool.into_iter().collect();
    let mut any_faces: BTreeSet<Codeword> = pool.iter().copied().collect();
    any_faces.insert(Codeword::EMPTY);
    let any_faces: Vec<Codeword> = any_faces.into_iter().collect();

    let mut evals = 0u64;
    macro_rules! tick {
        () => {
            evals += 1;
            if evals > budget {
                return SprocketSearch { found: None, evaluations: evals, exhausted: true };
            }
        };
    }

    for &tau in &taus {
        let tau_trunk = t.trunk(tau);
        let ok_sigma: Vec<Codeword> = pool
            .iter()
            .copied()
            .filter(|&s| {
                evals += 1;
                t.face(s.union(tau))
            })
            .collect();
        for (i1, &s1) in ok_sigma.iter().enumerate() {
            for &s2 in &ok_sigma {
                for &s3 in &ok_sigma[i1..] {
                    tick!();
                    if !partial_wheel_with(&t, [s1, s2, s3], tau).holds {
                        continue;
                    }
                    // candidates where σ1 and σ3 swap are the same up to
                    // exchanging the witnesses, so try both orientations
                    for (a, c) in [(s1, s3), (s3, s1)] {
                        let r1s = witness_pool(&t, a.union(tau), &any_faces);
                        let r3s = witness_pool(&t, c.union(tau), &any_faces);
                        let s2_trunk = t.trunk(s2);
                        for &r1 in &r1s {
                            let tr1 = t.trunk(r1);
                            for &r3 in &r3s {
                                tick!();
                                if !subset(&tau_trunk, &union(&tr1, &t.trunk(r3))) {
                                    continue;
                                }
                                if !subset(&t.trunk(r1.union(r3).union(tau)), &s2_trunk) {
                                    continue;
                                }
                                let cand = SprocketCandidate { sigma: [a, s2, c], tau, rho1: r1, rho3: r3 };
                                debug_assert!(sprocket_with(&t, &cand).holds);
                                return SprocketSearch { found: Some(cand), evaluations: evals, exhausted: false };
                            }
                        }
                    }
                }
            }
        }
    }
    SprocketSearch { found: None, evaluations: evals, exhausted: false }
}

/// Faces ρ with `Tk(base) ⊆ Tk(ρ)`.
fn witness_pool(t: &Trunks, base: Codeword, fallback: &[Codeword]) -> Vec<Codeword> {
    match t.meet(base) {
        // ρ must lie in every codeword of the trunk, so in its meet
        Some(m) if m.len() <= 16 => subsets_of(m),
        Some(m) => fallback.iter().copied().filter(|r| r.is_subset(m)).collect(),
        None => fallback.iter().copied().filter(|&r| t.face(r)).collect(),
    }
}
