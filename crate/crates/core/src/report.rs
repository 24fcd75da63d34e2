//! Everything known about one code, in a stable serializable form.

use serde::Serialize;
use serde_json::Value;

use crate::code::{is_max_intersection_complete, Codeword, NeuralCode, NeuronId};
use crate::decider::{decide_with, Certificate, DecideOptions, Status};
use crate::realize::{build_realization, export, ConstructionTag};
use crate::topology::{classify_small_complex, mandatory_faces, minimal_code, nerve, path_of_facets, NerveClass};
use crate::wheels::{is_sprocket, SprocketCandidate};

#[derive(Clone, Debug, Serialize)]
pub struct PathOfFacetsEntry {
    /// 1-based facet indices.
    pub facets: [usize; 3],
    pub holds: bool,
    /// `(a, b, c)` positions within `facets`, with `b` the middle of the path.
    pub witness: Option<[usize; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SprocketReport {
    pub candidate: Option<SprocketCandidate>,
    pub text: Option<String>,
    /// Replay of the sprocket conditions on the candidate.
    pub valid: Option<bool>,
    /// Outcome of the generic search, when it ran.
    pub search: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub construction: ConstructionTag,
    pub verified: bool,
    pub document: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub neurons: NeuronId,
    pub codewords: Vec<Codeword>,
    pub facets: Vec<Codeword>,
    pub nerve_class: Option<NerveClass>,
    /// Pairs `(facet index, reference vertex)`.
    pub nerve_relabeling: Option<Vec<(NeuronId, NeuronId)>>,
    pub mandatory_faces: Vec<Codeword>,
    pub minimal_code: Vec<Codeword>,
    pub missing_max_intersections: Vec<Codeword>,
    pub path_of_facets: Vec<PathOfFacetsEntry>,
    pub sprocket: SprocketReport,
    pub verdict: Status,
    pub certificates: Vec<Certificate>,
    pub checks: Vec<String>,
    pub realization: Option<RealizationReport>,
}

pub fn analyze(code: &NeuralCode) -> Report {
    analyze_with(code, DecideOptions::default(), true)
}

/// Builds the report; `realize` controls whether a realization is attempted
/// for CONVEX codes.
pub fn analyze_with(code: &NeuralCode, opts: DecideOptions, realize: bool) -> Report {
    let facets = code.facets();
    let classified = if (1..=4).contains(&facets.len()) {
        nerve(&facets).ok().and_then(|n| classify_small_complex(&n).ok())
    } else {
        None
    };
    let mut pof = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            for k in j + 1..facets.len() {
                let w = path_of_facets(facets[i], facets[j], facets[k]).expect("facets form an antichain");
                pof.push(PathOfFacetsEntry {
                    facets: [i + 1, j + 1, k + 1],
                    holds: w.is_some(),
                    witness: w.map(|w| [w.a, w.b, w.c]),
                });
            }
        }
    }
    let decision = decide_with(code, opts);
    let candidate = decision.certificates.iter().find_map(|c| match c {
        Certificate::Sprocket { candidate } | Certificate::L24MinimalPoFSprocket { candidate } => Some(*candidate),
        _ => None,
    });
    let sprocket = SprocketReport {
        candidate,
        text: candidate.map(|c| c.to_string()),
        valid: candidate.map(|c| is_sprocket(code, &c).holds),
        search: decision.checks.iter().find(|c| c.starts_with("sprocket_search")).cloned(),
    };
    let realization = if realize && decision.status == Status::Convex {
        build_realization(code).ok().flatten().map(|(r, tag)| RealizationReport {
            construction: tag,
            verified: crate::realize::verify_realization(&r, code).ok,
            document: export::to_json(&r),
        })
    } else {
        None
    };
    Report {
        neurons: code.n(),
        codewords: code.codewords().to_vec(),
        facets: facets.clone(),
        nerve_class: classified.as_ref().map(|c| c.class),
        nerve_relabeling: classified.map(|c| c.relabeling),
        mandatory_faces: mandatory_faces(&facets).into_iter().collect(),
        minimal_code: minimal_code(&facets).codewords().to_vec(),
        missing_max_intersections: is_max_intersection_complete(code).1.into_iter().collect(),
        path_of_facets: pof,
        sprocket,
        verdict: decision.status,
        certificates: decision.certificates,
        checks: decision.checks,
        realization,
    }
}

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let code = NeuralCode::new(self.codewords.iter().copied());
        let mut s = format!("code: {}\n", code.to_text(true));
        let facets: Vec<String> = self.facets.iter().map(|f| f.to_string()).collect();
        s.push_str(&format!("facets: {}\n", facets.join(", ")));
        if let Some(c) = self.nerve_class {
            s.push_str(&format!("nerve: {c}\n"));
        }
        let min = NeuralCode::new(self.minimal_code.iter().copied());
        s.push_str(&format!("minimal code: {}\n", min.to_text(true)));
        if !self.missing_max_intersections.is_empty() {
            let m: Vec<String> = self.missing_max_intersections.iter().map(|f| f.to_string()).collect();
            s.push_str(&format!("missing facet intersections: {}\n", m.join(", ")));
        }
        s.push_str(&format!("verdict: {}\n", self.verdict));
        for c in &self.certificates {
            s.push_str(&format!("  {c}\n"));
        }
        if let Some(r) = &self.realization {
            s.push_str(&format!("realization: {} (verified: {})\n", r.construction, r.verified));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_code;

    #[test]
    fn example_reports() {
        let c24 = parse_code("123,1246,145,356,12,14,3,5,6").unwrap();
        let r = analyze(&c24);
        assert_eq!(r.minimal_code, c24.codewords());
        assert_eq!(r.verdict, Status::NonConvex);
        assert_eq!(r.sprocket.valid, Some(true));
        assert!(r.realization.is_none());

        let r = analyze(&parse_code("134,1357,257,356,13,35,57").unwrap());
        assert_eq!(r.nerve_class.map(|c| c.id()), Some(22));
        assert_eq!(r.realization.as_ref().map(|x| x.verified), Some(true));
        assert_eq!(r.path_of_facets.len(), 4);

        let r = analyze(&NeuralCode::new([]));
        assert!(r.facets.is_empty());
        assert_eq!(r.verdict, Status::Convex);
        assert_eq!(r.nerve_class, None);
    }

    #[test]
    fn json_keys() {
        let v = analyze(&parse_code("134,1357,257,356,13,35,57").unwrap()).to_json();
        for k in [
            "neurons",
            "codewords",
            "facets",
            "nerve_class",
            "nerve_relabeling",
            "mandatory_faces",
            "minimal_code",
            "missing_max_intersections",
            "path_of_facets",
            "sprocket",
            "verdict",
            "certificates",
            "realization",
        ] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["verdict"], "CONVEX");
        assert_eq!(v["missing_max_intersections"], serde_json::json!([[3], [5]]));
    }
}
