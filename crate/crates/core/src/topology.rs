//! Simplicial complexes, nerves, links and the small-complex atlas.
//!
//! Vertex sets are stored as [`Codeword`] bitmasks, so a complex on facet
//! labels `1..=m` reuses the same set machinery as codes do.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::code::{max_intersection_faces, next_permutation, Codeword, NeuralCode, NeuronId};
use crate::error::{Error, Result};

/// A simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Codeword>,
}

/// Upper bound on faces materialized by the fallback contractibility checks.
pub const FACE_LIMIT: usize = 1 << 16;

/// Upper bound on states visited by the exhaustive collapse search.
pub const COLLAPSE_STATE_LIMIT: usize = 200_000;

impl SimplicialComplex {
    /// Builds a complex from generating sets; non-maximal and empty sets are dropped.
    pub fn from_facets<I: IntoIterator<Item = Codeword>>(sets: I) -> Self {
        let sets: Vec<Codeword> = sets.into_iter().collect();
        SimplicialComplex { facets: crate::code::maximal_sets(&sets) }
    }

    pub fn facets(&self) -> &[Codeword] {
        &self.facets
    }

    pub fn vertices(&self) -> Codeword {
        self.facets.iter().fold(Codeword::EMPTY, |a, &f| a.union(f))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn is_face(&self, sigma: Codeword) -> bool {
        crate::code::is_face(&self.facets, sigma)
    }

    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// All nonempty faces, or `None` if there are more than `limit`.
    pub fn faces(&self, limit: usize) -> Option<BTreeSet<Codeword>> {
        let mut out = BTreeSet::new();
        for &f in &self.facets {
            if f.len() >= 40 {
                return None;
            }
            let mask = f.bits();
            let mut sub = mask;
            while sub != 0 {
                out.insert(Codeword::from_bits(sub));
                if out.len() > limit {
                    return None;
                }
                sub = (sub - 1) & mask;
            }
        }
        Some(out)
    }

    /// Vertex sets of the connected components, in order of least vertex.
    pub fn components(&self) -> Vec<Codeword> {
        let mut comps: Vec<Codeword> = Vec::new();
        for &f in &self.facets {
            let mut merged = f;
            comps.retain(|&c| {
                if c.intersection(merged).is_empty() {
                    true
                } else {
                    merged = merged.union(c);
                    false
                }
            });
            comps.push(merged);
        }
        comps.sort_by_key(|c| c.iter().next());
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Euler characteristic, or `None` when the face count exceeds `limit`.
    pub fn euler_characteristic(&self, limit: usize) -> Option<i64> {
        let faces = self.faces(limit)?;
        Some(faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum())
    }

    /// Relabels vertices; `perm[i - 1]` is the new label of vertex `i`.
    pub fn relabel(&self, perm: &[NeuronId]) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|f| f.relabel(perm)))
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.facets.iter().map(|c| c.to_braced()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Nerve of a family of nonempty sets, on vertex labels `1..=m`.
pub fn nerve(sets: &[Codeword]) -> Result<SimplicialComplex> {
    if sets.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptySet);
    }
    if sets.len() > crate::code::MAX_NEURONS as usize {
        return Err(Error::NeuronOutOfRange(sets.len() as NeuronId));
    }
    let mut faces: Vec<Codeword> = Vec::new();
    // depth-first over index sets in increasing order, pruning empty intersections
    let mut stack: Vec<(Codeword, Codeword, usize)> = Vec::new();
    for (i, &s) in sets.iter().enumerate() {
        stack.push((Codeword::from_slice(&[i as NeuronId + 1]), s, i + 1));
    }
    while let Some((face, inter, next)) = stack.pop() {
        let mut extended = false;
        for (j, &s) in sets.iter().enumerate().skip(next) {
            let meet = inter.intersection(s);
            if !meet.is_empty() {
                let mut g = face;
                g.insert(j as NeuronId + 1);
                stack.push((g, meet, j + 1));
                extended = true;
            }
        }
        if !extended {
            faces.push(face);
        }
    }
    Ok(SimplicialComplex::from_facets(faces))
}

/// Facet sets of the link of `sigma`: `F \ sigma` for every facet `F ⊇ sigma`.
pub fn link_facet_sets(facets: &[Codeword], sigma: Codeword) -> Result<Vec<Codeword>> {
    if !crate::code::is_face(facets, sigma) {
        return Err(Error::NotAFace(sigma.to_braced()));
    }
    let mut out: Vec<Codeword> = Vec::new();
    for &f in facets {
        if sigma.is_subset(f) {
            let d = f.difference(sigma);
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Collapsibility

/// Whether a complex (given by all its nonempty faces) collapses to a vertex.
///
/// Tries a greedy collapse first, then an exhaustive search over collapse
/// orders. Returns `None` if the search exceeds `state_limit` states.
pub fn is_collapsible(faces: &BTreeSet<Codeword>, state_limit: usize) -> Option<bool> {
    let start: Vec<Codeword> = faces.iter().copied().collect();
    if start.is_empty() {
        return Some(false);
    }
    if greedy_collapse(start.clone()) {
        return Some(true);
    }
    let mut seen: HashSet<Vec<Codeword>> = HashSet::new();
    let mut stack = vec![start];
    while let Some(state) = stack.pop() {
        if state.len() == 1 {
            return Some(true);
        }
        if !seen.insert(state.clone()) {
            continue;
        }
        if seen.len() > state_limit {
            return None;
        }
        for (sigma, tau) in free_pairs(&state) {
            let next: Vec<Codeword> = state.iter().copied().filter(|&f| f != sigma && f != tau).collect();
            stack.push(next);
        }
    }
    Some(false)
}

fn greedy_collapse(mut state: Vec<Codeword>) -> bool {
    loop {
        if state.len() == 1 {
            return true;
        }
        match free_pairs(&state).into_iter().next() {
            Some((sigma, tau)) => state.retain(|&f| f != sigma && f != tau),
            None => return false,
        }
    }
}

/// Pairs `(sigma, tau)` where `tau` is the only proper coface of `sigma`.
fn free_pairs(state: &[Codeword]) -> Vec<(Codeword, Codeword)> {
    let mut out = Vec::new();
    for &sigma in state {
        let mut coface = None;
        let mut count = 0;
        for &t in state {
            if t != sigma && sigma.is_subset(t) {
                count += 1;
                coface = Some(t);
                if count > 1 {
                    break;
                }
            }
        }
        if count == 1 {
            out.push((sigma, coface.unwrap()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Small-complex atlas

/// One of the 28 isomorphism classes of complexes on at most four vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NerveClass(u8);

impl NerveClass {
    pub fn new(id: u8) -> Option<Self> {
        (1..=28).contains(&id).then_some(NerveClass(id))
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = NerveClass> {
        (1..=28).map(NerveClass)
    }

    /// Reference complex on vertex labels `1..=k`.
    pub fn reference(self) -> SimplicialComplex {
        let facets = REFERENCE[(self.0 - 1) as usize];
        SimplicialComplex::from_facets(facets.iter().map(|f| Codeword::from_slice(f)))
    }

    pub fn vertex_count(self) -> usize {
        match self.0 {
            1 => 1,
            2..=3 => 2,
            4..=8 => 3,
            _ => 4,
        }
    }

    pub fn contractible(self) -> bool {
        table().contractible[(self.0 - 1) as usize]
    }
}

impl fmt::Display for NerveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

impl std::str::FromStr for NerveClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.strip_prefix('L')
            .and_then(|d| d.parse::<u8>().ok())
            .and_then(NerveClass::new)
            .ok_or_else(|| format!("unknown nerve class '{s}'"))
    }
}

impl Serialize for NerveClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Vertex 1 is drawn at the top, 2 left, 3 right, 4 bottom.
static REFERENCE: [&[&[NeuronId]]; 28] = [
    &[&[1]],
    &[&[1], &[2]],
    &[&[1, 2]],
    &[&[1], &[2], &[3]],
    &[&[1, 2], &[3]],
    &[&[1, 2], &[1, 3]],
    &[&[1, 2], &[1, 3], &[2, 3]],
    &[&[1, 2, 3]],
    &[&[1], &[2], &[3], &[4]],
    &[&[1, 2], &[3], &[4]],
    &[&[1, 2], &[1, 3], &[4]],
    &[&[1, 2], &[3, 4]],
    &[&[1, 2], &[3, 4], &[1, 3]],
    &[&[1, 2], &[1, 4], &[1, 3]],
    &[&[1, 2], &[2, 3], &[1, 3], &[4]],
    &[&[1, 2, 3], &[4]],
    &[&[1, 2], &[2, 3], &[1, 3], &[2, 4]],
    &[&[1, 2, 3], &[2, 4]],
    &[&[1, 2], &[1, 3], &[2, 4], &[3, 4]],
    &[&[1, 2], &[1, 3], &[3, 4], &[2, 3], &[1, 4]],
    &[&[1, 2, 3], &[2, 4], &[3, 4]],
    &[&[1, 2, 3], &[2, 3, 4]],
    &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]],
    &[&[1, 2, 3], &[1, 4], &[2, 4], &[3, 4]],
    &[&[1, 2, 3], &[1, 3, 4], &[2, 4]],
    &[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4]],
    &[&[1, 2, 3], &[1, 3, 4], &[1, 2, 4], &[2, 3, 4]],
    &[&[1, 2, 3, 4]],
];

struct Table {
    /// Face bitmask of each reference complex (bit `s` set for face subset `s`).
    masks: [u16; 28],
    contractible: [bool; 28],
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut masks = [0u16; 28];
        let mut contractible = [false; 28];
        for class in NerveClass::all() {
            let i = (class.0 - 1) as usize;
            let reference = class.reference();
            masks[i] = face_mask(&reference);
            let faces = reference.faces(FACE_LIMIT).expect("reference complexes are tiny");
            let collapsible = is_collapsible(&faces, usize::MAX).unwrap_or(false);
            let chi = reference.euler_characteristic(FACE_LIMIT).unwrap_or(0);
            let necessary = reference.is_connected() && chi == 1;
            // every contractible complex on four or fewer vertices collapses,
            // so the two tests must agree on the reference list
            assert_eq!(collapsible, necessary, "collapse oracle disagrees with Euler test on {class}");
            contractible[i] = collapsible;
        }
        Table { masks, contractible }
    })
}

/// Bitmask of the faces of a complex whose vertices lie in `1..=4`.
fn face_mask(c: &SimplicialComplex) -> u16 {
    let mut mask = 0u16;
    for &f in c.facets() {
        let bits = f.bits() as u16;
        let mut sub = bits;
        while sub != 0 {
            mask |= 1 << sub;
            sub = (sub - 1) & bits;
        }
    }
    mask
}

fn relabel_mask(mask: u16, perm: &[usize]) -> u16 {
    let mut out = 0u16;
    for s in 1u16..16 {
        if mask & (1 << s) != 0 {
            let mut t = 0u16;
            for (i, &p) in perm.iter().enumerate() {
                if s & (1 << i) != 0 {
                    t |= 1 << (p - 1);
                }
            }
            out |= 1 << t;
        }
    }
    out
}

/// A complex identified with one of the reference classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedNerve {
    pub class: NerveClass,
    /// `(input vertex, reference vertex)` pairs in input vertex order.
    pub relabeling: Vec<(NeuronId, NeuronId)>,
    pub contractible: bool,
}

impl ClassifiedNerve {
    /// Reference label assigned to an input vertex.
    pub fn reference_label(&self, input: NeuronId) -> Option<NeuronId> {
        self.relabeling.iter().find(|(i, _)| *i == input).map(|&(_, r)| r)
    }

    /// Input vertex carrying a reference label.
    pub fn input_vertex(&self, reference: NeuronId) -> Option<NeuronId> {
        self.relabeling.iter().find(|(_, r)| *r == reference).map(|&(i, _)| i)
    }
}

/// Identifies a complex on one to four vertices with its reference class.
///
/// The witness relabeling is the lexicographically least one, read as the
/// sequence of reference labels assigned to the input vertices in order.
pub fn classify_small_complex(complex: &SimplicialComplex) -> Result<ClassifiedNerve> {
    let vertices: Vec<NeuronId> = complex.vertices().to_vec();
    let k = vertices.len();
    if k == 0 || k > 4 {
        return Err(Error::ComplexSize(k));
    }
    // compress input vertices to positions 1..=k
    let mut compress = vec![0 as NeuronId; vertices[k - 1] as usize];
    for (pos, &v) in vertices.iter().enumerate() {
        compress[(v - 1) as usize] = pos as NeuronId + 1;
    }
    let mask = face_mask(&complex.relabel(&compress));
    let t = table();
    for class in NerveClass::all().filter(|c| c.vertex_count() == k) {
        let target = t.masks[(class.0 - 1) as usize];
        if target.count_ones() != mask.count_ones() {
            continue;
        }
        let mut perm: Vec<usize> = (1..=k).collect();
        loop {
            if relabel_mask(mask, &perm) == target {
                let relabeling = vertices.iter().zip(&perm).map(|(&v, &p)| (v, p as NeuronId)).collect();
                return Ok(ClassifiedNerve { class, relabeling, contractible: class.contractible() });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    unreachable!("every complex on at most four vertices is in the reference list")
}

/// Contractibility of a complex on at most four vertices.
pub fn is_contractible_small(complex: &SimplicialComplex) -> Result<bool> {
    Ok(classify_small_complex(complex)?.contractible)
}

/// Three-valued answer of the link test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contractibility {
    Contractible,
    NonContractible,
    /// Neither the collapse search nor the necessary conditions settled it.
    Indeterminate,
}

/// Contractibility of the link of a nonempty face, via the nerve of its facets.
///
/// Exact when that nerve has at most four vertices. Larger nerves use a cone
/// test, a collapse search and the connectivity/Euler-characteristic
/// necessary conditions, and may come back indeterminate.
pub fn is_link_contractible(facets: &[Codeword], sigma: Codeword) -> Result<Contractibility> {
    if sigma.is_empty() {
        return Err(Error::EmptyFace);
    }
    let sets = link_facet_sets(facets, sigma)?;
    if sets.iter().any(|s| s.is_empty()) {
        // sigma is a facet, its link has empty realization
        return Ok(Contractibility::NonContractible);
    }
    Ok(complex_contractibility(&sets))
}

/// Contractibility of the complex generated by `sets` (all nonempty).
pub fn complex_contractibility(sets: &[Codeword]) -> Contractibility {
    use Contractibility::*;
    let common = sets.iter().skip(1).fold(sets[0], |a, &s| a.intersection(s));
    if !common.is_empty() {
        return Contractible;
    }
    let n = nerve(sets).expect("sets are nonempty");
    if n.vertex_count() <= 4 {
        return if is_contractible_small(&n).expect("size checked") { Contractible } else { NonContractible };
    }
    if !n.is_connected() {
        return NonContractible;
    }
    // the nerve is homotopy equivalent to the complex; try whichever is smaller
    let a = SimplicialComplex::from_facets(sets.iter().copied());
    for c in [&n, &a] {
        if let Some(faces) = c.faces(FACE_LIMIT) {
            let chi: i64 = faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum();
            if chi != 1 {
                return NonContractible;
            }
            if is_collapsible(&faces, COLLAPSE_STATE_LIMIT) == Some(true) {
                return Contractible;
            }
        }
    }
    Indeterminate
}

/// Faces with non-contractible link.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MandatoryFaces {
    pub faces: BTreeSet<Codeword>,
    /// Candidates whose link could not be settled.
    pub indeterminate: BTreeSet<Codeword>,
}

/// All mandatory faces. Only facets and intersections of facets can be
/// mandatory, so only those candidates are tested.
pub fn mandatory_faces_checked(facets: &[Codeword]) -> MandatoryFaces {
    let facets = crate::code::maximal_sets(facets);
    let mut out = MandatoryFaces::default();
    out.faces.extend(facets.iter().copied());
    for sigma in max_intersection_faces(&facets) {
        match is_link_contractible(&facets, sigma).expect("intersections of facets are faces") {
            Contractibility::Contractible => {}
            Contractibility::NonContractible => {
                out.faces.insert(sigma);
            }
            Contractibility::Indeterminate => {
                out.indeterminate.insert(sigma);
            }
        }
    }
    out
}

/// Mandatory faces whose status is settled; see [`mandatory_faces_checked`].
pub fn mandatory_faces(facets: &[Codeword]) -> BTreeSet<Codeword> {
    mandatory_faces_checked(facets).faces
}

/// The smallest code on the complex without local obstructions.
pub fn minimal_code(facets: &[Codeword]) -> NeuralCode {
    NeuralCode::new(mandatory_faces(facets))
}

/// Result of the local-obstruction scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCheck {
    /// Least mandatory face missing from the code.
    pub missing: Option<Codeword>,
    /// Candidates absent from the code whose link was indeterminate.
    pub indeterminate: Vec<Codeword>,
}

pub fn local_obstruction_check(code: &NeuralCode) -> ObstructionCheck {
    let m = mandatory_faces_checked(&code.facets());
    ObstructionCheck {
        missing: m.faces.iter().copied().find(|f| !code.contains(*f)),
        indeterminate: m.indeterminate.into_iter().filter(|f| !code.contains(*f)).collect(),
    }
}

/// Least mandatory face missing from the code, if any.
pub fn has_local_obstruction(code: &NeuralCode) -> Option<Codeword> {
    local_obstruction_check(code).missing
}

/// Positions `(a, b, c)` of three facets with `b` in the middle of the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathOfFacetsWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl PathOfFacetsWitness {
    pub fn as_tuple(self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }
}

/// Path-of-Facets test: exactly one of the three pairwise differences
/// `(Fi ∩ Fj) \ Fk` is empty. Positions in the witness are 1-based.
pub fn path_of_facets(f1: Codeword, f2: Codeword, f3: Codeword) -> Result<Option<PathOfFacetsWitness>> {
    let fs = [f1, f2, f3];
    for i in 0..3 {
        for j in 0..3 {
            if i != j && (fs[i].is_empty() || fs[i].is_subset(fs[j])) {
                return Err(Error::NotAntichain);
            }
        }
    }
    let d12 = f1.intersection(f2).difference(f3).is_empty();
    let d13 = f1.intersection(f3).difference(f2).is_empty();
    let d23 = f2.intersection(f3).difference(f1).is_empty();
    Ok(match (d12, d13, d23) {
        (false, true, false) => Some(PathOfFacetsWitness { a: 1, b: 2, c: 3 }),
        (true, false, false) => Some(PathOfFacetsWitness { a: 1, b: 3, c: 2 }),
        (false, false, true) => Some(PathOfFacetsWitness { a: 2, b: 1, c: 3 }),
        _ => None,
    })
}
