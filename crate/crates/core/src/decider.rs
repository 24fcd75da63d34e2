//! The convexity decision procedure.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::code::{is_max_intersection_complete, Codeword, NeuralCode};
use crate::topology::{
    classify_small_complex, local_obstruction_check, minimal_code, nerve, path_of_facets, NerveClass,
};
use crate::wheels::{canonical_l24_sprocket, is_sprocket, search_sprocket, SprocketCandidate, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Convex,
    NonConvex,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Convex => "CONVEX",
            Status::NonConvex => "NONCONVEX",
            Status::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Which no-obstruction theorem a CONVEX verdict cites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremCase {
    AtMostThreeMaximal,
    Class(NerveClass),
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremCase::AtMostThreeMaximal => f.write_str("at-most-3-maximal"),
            TheoremCase::Class(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for TheoremCase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Verdict of one nerve component of a disconnected code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDecision {
    pub codewords: Vec<Codeword>,
    pub status: Status,
    pub certificates: Vec<Certificate>,
}

/// Justification attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    MaxIntersectionComplete,
    LocalObstruction { face: Codeword },
    Sprocket { candidate: SprocketCandidate },
    TheoremNoLocalObstruction { case: TheoremCase },
    L24MinimalPoFConvex,
    L24MinimalPoFSprocket { candidate: SprocketCandidate },
    NoTwoSimplexNerve,
    DisconnectedDecomposition { components: Vec<ComponentDecision> },
    /// The verdict for the minimal code carries over to this larger code.
    Monotonicity { base: Vec<Codeword> },
    /// Candidate mandatory faces, absent from the code, whose link status
    /// could not be settled.
    IndeterminateLinks { faces: Vec<Codeword> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::MaxIntersectionComplete => "MaxIntersectionComplete",
            Certificate::LocalObstruction { .. } => "LocalObstruction",
            Certificate::Sprocket { .. } => "Sprocket",
            Certificate::TheoremNoLocalObstruction { .. } => "TheoremNoLocalObstruction",
            Certificate::L24MinimalPoFConvex => "L24MinimalPoFConvex",
            Certificate::L24MinimalPoFSprocket { .. } => "L24MinimalPoFSprocket",
            Certificate::NoTwoSimplexNerve => "NoTwoSimplexNerve",
            Certificate::DisconnectedDecomposition { .. } => "DisconnectedDecomposition",
            Certificate::Monotonicity { .. } => "Monotonicity",
            Certificate::IndeterminateLinks { .. } => "IndeterminateLinks",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::LocalObstruction { face } => write!(f, "LocalObstruction({face})"),
            Certificate::Sprocket { candidate } => write!(f, "Sprocket{candidate}"),
            Certificate::TheoremNoLocalObstruction { case } => write!(f, "TheoremNoLocalObstruction({case})"),
            Certificate::L24MinimalPoFSprocket { candidate } => write!(f, "L24MinimalPoFSprocket{candidate}"),
            Certificate::DisconnectedDecomposition { components } => {
                let parts: Vec<&str> = components.iter().map(|c| c.status.as_str()).collect();
                write!(f, "DisconnectedDecomposition({})", parts.join(", "))
            }
            Certificate::Monotonicity { base } => {
                let code = NeuralCode::new(base.iter().copied());
                write!(f, "Monotonicity({})", code)
            }
            Certificate::IndeterminateLinks { faces } => {
                let parts: Vec<String> = faces.iter().map(|c| c.to_string()).collect();
                write!(f, "IndeterminateLinks({})", parts.join(", "))
            }
            other => f.write_str(other.kind()),
        }
    }
}

/// A verdict, its certificates and the checks that ran.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub status: Status,
    pub certificates: Vec<Certificate>,
    pub checks: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Cap on condition evaluations in the sprocket search.
    pub budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: DEFAULT_BUDGET }
    }
}

/// Decides convexity with the default sprocket budget.
pub fn decide(code: &NeuralCode) -> Decision {
    decide_with(code, DecideOptions::default())
}

pub fn decide_with(code: &NeuralCode, opts: DecideOptions) -> Decision {
    let mut checks = Vec::new();
    let done = |status, certificates, checks| Decision { status, certificates, checks };

    checks.push("local_obstruction".to_string());
    let obstruction = local_obstruction_check(code);
    if let Some(face) = obstruction.missing {
        return done(Status::NonConvex, vec![Certificate::LocalObstruction { face }], checks);
    }
    let indeterminate = obstruction.indeterminate;

    checks.push("max_intersection_complete".to_string());
    if is_max_intersection_complete(code).0 {
        return done(Status::Convex, vec![Certificate::MaxIntersectionComplete], checks);
    }

    let facets = code.facets();
    let m = facets.len();
    // theorem-based CONVEX verdicts go through the minimal code when the code is larger
    let convex_by = |cert: Certificate| {
        let min = minimal_code(&facets);
        let mut certs = vec![cert];
        if min.codewords() != code.codewords() {
            certs.push(Certificate::Monotonicity { base: min.codewords().to_vec() });
        }
        certs
    };

    if m <= 3 {
        checks.push("facet_count".to_string());
        let cert = Certificate::TheoremNoLocalObstruction { case: TheoremCase::AtMostThreeMaximal };
        return done(Status::Convex, convex_by(cert), checks);
    }

    let n = nerve(&facets).expect("facets are nonempty");
    if m == 4 {
        checks.push("nerve_class".to_string());
        let classified = classify_small_complex(&n).expect("four vertices");
        let class = classified.class;
        if (9..=23).contains(&class.id()) {
            let cert = Certificate::TheoremNoLocalObstruction { case: TheoremCase::Class(class) };
            return done(Status::Convex, convex_by(cert), checks);
        }
        if class.id() == 24 && minimal_code(&facets).codewords() == code.codewords() {
            checks.push("path_of_facets".to_string());
            let f4 = classified.input_vertex(4).expect("L24 labels vertex 4") as usize - 1;
            let tri: Vec<Codeword> = (0..4).filter(|&i| i != f4).map(|i| facets[i]).collect();
            let pof = path_of_facets(tri[0], tri[1], tri[2]).expect("facets form an antichain");
            if pof.is_none() {
                return done(Status::Convex, vec![Certificate::L24MinimalPoFConvex], checks);
            }
            let candidate = canonical_l24_sprocket(code).expect("minimal L24 codes with a path carry a sprocket");
            return done(Status::NonConvex, vec![Certificate::L24MinimalPoFSprocket { candidate }], checks);
        }
        return sprocket_or_unknown(code, opts, checks, &indeterminate);
    }

    if !indeterminate.is_empty() && n.dimension() >= 2 && n.is_connected() {
        // fall through to the sprocket search, which stays sound
        return sprocket_or_unknown(code, opts, checks, &indeterminate);
    }
    checks.push("nerve_dimension".to_string());
    if n.dimension() <= 1 {
        if !indeterminate.is_empty() {
            let faces = indeterminate.clone();
            return done(Status::Unknown, vec![Certificate::IndeterminateLinks { faces }], checks);
        }
        return done(Status::Convex, convex_by(Certificate::NoTwoSimplexNerve), checks);
    }
    checks.push("nerve_components".to_string());
    let comps = n.components();
    if comps.len() > 1 {
        let mut components = Vec::new();
        for comp in comps {
            let comp_facets: Vec<Codeword> = comp.iter().map(|i| facets[(i - 1) as usize]).collect();
            let sub = NeuralCode::new(
                code.codewords().iter().copied().filter(|w| comp_facets.iter().any(|f| w.is_subset(*f))),
            );
            let d = decide_with(&sub, opts);
            components.push(ComponentDecision {
                codewords: sub.codewords().to_vec(),
                status: d.status,
                certificates: d.certificates,
            });
        }
        let status = if components.iter().all(|c| c.status == Status::Convex) {
            Status::Convex
        } else if components.iter().any(|c| c.status == Status::NonConvex) {
            Status::NonConvex
        } else {
            Status::Unknown
        };
        return done(status, vec![Certificate::DisconnectedDecomposition { components }], checks);
    }
    sprocket_or_unknown(code, opts, checks, &indeterminate)
}

fn sprocket_or_unknown(
    code: &NeuralCode,
    opts: DecideOptions,
    mut checks: Vec<String>,
    indeterminate: &[Codeword],
) -> Decision {
    let search = search_sprocket(code, opts.budget);
    checks.push(format!(
        "sprocket_search(evaluations={}, exhausted={})",
        search.evaluations, search.exhausted
    ));
    match search.found {
        Some(candidate) => Decision {
            status: Status::NonConvex,
            certificates: vec![Certificate::Sprocket { candidate }],
            checks,
        },
        None => {
            let mut certificates = Vec::new();
            if !indeterminate.is_empty() {
                certificates.push(Certificate::IndeterminateLinks { faces: indeterminate.to_vec() });
            }
            Decision { status: Status::Unknown, certificates, checks }
        }
    }
}

/// Re-runs the check a certificate cites and confirms its payload.
pub fn replay_certificate(code: &NeuralCode, cert: &Certificate) -> bool {
    let facets = code.facets();
    match cert {
        Certificate::MaxIntersectionComplete => is_max_intersection_complete(code).0,
        Certificate::LocalObstruction { face } => local_obstruction_check(code).missing == Some(*face),
        Certificate::Sprocket { candidate } => is_sprocket(code, candidate).holds,
        Certificate::TheoremNoLocalObstruction { case } => {
            let clean = local_obstruction_check(code).missing.is_none();
            clean
                && match case {
                    TheoremCase::AtMostThreeMaximal => facets.len() <= 3,
                    TheoremCase::Class(c) => {
                        facets.len() == 4
                            && nerve(&facets).ok().and_then(|n| classify_small_complex(&n).ok()).map(|k| k.class)
                                == Some(*c)
                            && (9..=23).contains(&c.id())
                    }
                }
        }
        Certificate::L24MinimalPoFConvex => {
            facets.len() == 4
                && minimal_code(&facets).codewords() == code.codewords()
                && canonical_l24_sprocket(code).is_none()
                && nerve(&facets).ok().and_then(|n| classify_small_complex(&n).ok()).map(|k| k.class.id())
                    == Some(24)
        }
        Certificate::L24MinimalPoFSprocket { candidate } => {
            minimal_code(&facets).codewords() == code.codewords()
                && canonical_l24_sprocket(code) == Some(*candidate)
        }
        Certificate::NoTwoSimplexNerve => {
            local_obstruction_check(code).missing.is_none()
                && nerve(&facets).map(|n| n.dimension() <= 1).unwrap_or(false)
        }
        Certificate::DisconnectedDecomposition { components } => {
            let n = match nerve(&facets) {
                Ok(n) => n,
                Err(_) => return false,
            };
            n.components().len() == components.len()
                && components.iter().all(|c| {
                    let sub = NeuralCode::new(c.codewords.iter().copied());
                    let d = decide(&sub);
                    d.status == c.status && d.certificates == c.certificates
                })
        }
        Certificate::Monotonicity { base } => {
            let base = NeuralCode::new(base.iter().copied());
            base.codewords() == minimal_code(&facets).codewords()
                && base.codewords().iter().all(|w| code.contains(*w))
                && base.facets() == facets
        }
        Certificate::IndeterminateLinks { faces } => local_obstruction_check(code).indeterminate == *faces,
    }
}
