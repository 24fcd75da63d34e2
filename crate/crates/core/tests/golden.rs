use std::collections::BTreeSet;

use convex_codes::code::{
    canonicalize, is_face, is_max_intersection_complete, max_intersection_faces, maximal_codewords, parse_code,
    trunk, Codeword, NeuralCode,
};
use convex_codes::decider::{decide, replay_certificate, Certificate, Status, TheoremCase};
use convex_codes::realize::{build_realization, code_of_realization, verify_realization, ConstructionTag};
use convex_codes::topology::{
    classify_small_complex, has_local_obstruction, is_contractible_small, is_link_contractible, link_facet_sets,
    mandatory_faces, minimal_code, nerve, path_of_facets, Contractibility, NerveClass, SimplicialComplex,
};
use convex_codes::wheels::{
    canonical_l24_sprocket, find_sprocket, is_partial_wheel, is_sprocket, Condition, SprocketCandidate,
    DEFAULT_BUDGET,
};

const C22: &str = "134,1357,257,356,13,35,57";
const C24: &str = "123,1246,145,356,12,14,3,5,6";
const C18A: &str = "345,234,356,12,34,35,2";
const C18B: &str = "123,1346,145,67,13,14,6";
const TABLE3: &str = "123,145,246,1356,13,15,2,4,6";
const D28: &str = "1237,12467,1457,3567,127,147,37,57,67,7";

fn code(s: &str) -> NeuralCode {
    parse_code(s).unwrap()
}

fn w(s: &str) -> Codeword {
    Codeword::digits(s)
}

fn ws(list: &[&str]) -> BTreeSet<Codeword> {
    list.iter().map(|s| w(s)).collect()
}

fn facets(s: &str) -> Vec<Codeword> {
    code(s).facets()
}

#[test]
fn parsing() {
    let c = code(C22);
    assert_eq!(c.len(), 8);
    assert_eq!(c.n(), 7);
    assert!(c.contains(Codeword::EMPTY));
    assert_eq!(code("{1,2},{2}"), NeuralCode::digits(&["2", "12"]));
    let c = code(C24);
    assert_eq!((c.len(), c.n()), (10, 6));
    assert!(parse_code("0").is_err());
    assert!(parse_code("{1,-2}").is_err());
    assert!(parse_code("12,{3").is_err());
    // multi-digit compact tokens are fine while every index is a single digit
    assert_eq!(code("{12},3").n(), 12);
    assert!(parse_code("{12},34").is_err());
}

#[test]
fn maximal_and_trunks() {
    assert_eq!(maximal_codewords(&code(C22)).into_iter().collect::<BTreeSet<_>>(), ws(&["134", "1357", "356", "257"]));
    assert!(maximal_codewords(&NeuralCode::new([])).is_empty());
    assert_eq!(maximal_codewords(&code("1,12")), vec![w("12")]);

    let c24 = code(C24);
    assert_eq!(trunk(&c24, w("1")), ws(&["123", "1246", "145", "12", "14"]));
    assert_eq!(trunk(&c24, Codeword::EMPTY).len(), c24.len());
    assert_eq!(trunk(&c24, w("12")), ws(&["12", "123", "1246"]));
}

#[test]
fn faces_and_intersections() {
    let f24 = facets(C24);
    assert!(!is_face(&f24, w("1356")));
    assert!(is_face(&f24, Codeword::EMPTY));
    assert!(is_face(&f24, w("16")));

    assert_eq!(max_intersection_faces(&facets(C22)), ws(&["13", "3", "35", "5", "57"]));
    assert_eq!(max_intersection_faces(&f24), ws(&["1", "12", "14", "3", "6", "5"]));
    assert!(max_intersection_faces(&[w("12"), w("34")]).is_empty());

    assert_eq!(is_max_intersection_complete(&code(C22)), (false, ws(&["3", "5"])));
    assert_eq!(is_max_intersection_complete(&code(C24)), (false, ws(&["1"])));
    assert_eq!(is_max_intersection_complete(&code(C24).with_codeword(w("1"))), (true, BTreeSet::new()));
}

#[test]
fn canonical_forms() {
    let c = canonicalize(&code("2"));
    assert_eq!(c.code.codewords(), NeuralCode::digits(&["1"]).codewords());
    let c = canonicalize(&code("12,13"));
    assert_eq!(c.code, code("12,13"));
    let once = canonicalize(&code(C24)).code;
    assert_eq!(canonicalize(&once).code, once);
}

#[test]
fn nerves_and_classes() {
    let n22 = nerve(&facets(C22)).unwrap();
    assert_eq!(classify_small_complex(&n22).unwrap().class.id(), 22);
    assert_eq!(n22.facets().iter().filter(|f| f.len() == 3).count(), 2);
    let n24 = nerve(&facets(C24)).unwrap();
    let k = classify_small_complex(&n24).unwrap();
    assert_eq!((k.class.id(), k.contractible), (24, false));
    assert_eq!(classify_small_complex(&nerve(&[w("1")]).unwrap()).unwrap().class.id(), 1);
    assert!(nerve(&[w("1"), Codeword::EMPTY]).is_err());

    let hollow = SimplicialComplex::from_facets([w("12"), w("13"), w("23")]);
    let k = classify_small_complex(&hollow).unwrap();
    assert_eq!((k.class.id(), k.contractible), (7, false));
    let filled = SimplicialComplex::from_facets([w("123")]);
    assert_eq!(classify_small_complex(&filled).unwrap().class.id(), 8);
    assert!(is_contractible_small(&filled).unwrap());

    assert!(is_contractible_small(&NerveClass::new(1).unwrap().reference()).unwrap());
    assert!(!is_contractible_small(&NerveClass::new(2).unwrap().reference()).unwrap());
    assert!(is_contractible_small(&NerveClass::new(6).unwrap().reference()).unwrap());
}

#[test]
fn links() {
    let f24 = facets(C24);
    let f22 = facets(C22);
    let set = |v: Vec<Codeword>| v.into_iter().collect::<BTreeSet<_>>();
    assert_eq!(set(link_facet_sets(&f24, w("1")).unwrap()), ws(&["23", "246", "45"]));
    assert_eq!(set(link_facet_sets(&f22, w("3")).unwrap()), ws(&["14", "157", "56"]));
    assert_eq!(link_facet_sets(&f24, w("356")).unwrap(), vec![Codeword::EMPTY]);
    assert!(link_facet_sets(&f24, w("1356")).is_err());

    assert_eq!(is_link_contractible(&f24, w("1")).unwrap(), Contractibility::Contractible);
    assert_eq!(is_link_contractible(&f24, w("12")).unwrap(), Contractibility::NonContractible);
    assert_eq!(is_link_contractible(&f22, w("3")).unwrap(), Contractibility::Contractible);
}

#[test]
fn mandatory_and_minimal() {
    let f24 = facets(C24);
    assert_eq!(mandatory_faces(&f24), ws(&["123", "1246", "145", "356", "12", "14", "3", "6", "5"]));
    assert_eq!(mandatory_faces(&facets(C22)), ws(&["134", "1357", "356", "257", "13", "35", "57"]));
    assert_eq!(mandatory_faces(&[w("123")]), ws(&["123"]));

    assert_eq!(minimal_code(&f24), code(C24));
    assert_eq!(minimal_code(&[w("134"), w("1357"), w("356")]), code("134,1357,356,13,35"));
    assert_eq!(minimal_code(&[w("12")]), code("12"));

    assert_eq!(has_local_obstruction(&code(C24)), None);
    assert_eq!(has_local_obstruction(&code(C22)), None);
    let broken = minimal_code(&facets(C22)).without_codeword(w("13"));
    assert_eq!(has_local_obstruction(&broken), Some(w("13")));
}

#[test]
fn paths_of_facets() {
    assert_eq!(path_of_facets(w("123"), w("1246"), w("145")).unwrap().map(|p| p.as_tuple()), Some((1, 2, 3)));
    assert_eq!(path_of_facets(w("134"), w("1357"), w("356")).unwrap().map(|p| p.as_tuple()), Some((1, 2, 3)));
    assert_eq!(path_of_facets(w("12"), w("13"), w("23")).unwrap(), None);
    assert!(path_of_facets(w("12"), w("123"), w("4")).is_err());
}

#[test]
fn wheel_predicates() {
    let c24 = code(C24);
    assert!(is_partial_wheel(&c24, w("3"), w("6"), w("5"), w("1")).holds);
    assert_eq!(is_partial_wheel(&c24, w("3"), w("6"), w("5"), w("2")).failed, Some(Condition::PIIICirc));
    assert_eq!(is_partial_wheel(&c24, w("3"), w("6"), w("5"), Codeword::EMPTY).failed, Some(Condition::PII));

    let sigma = [w("3"), w("6"), w("5")];
    assert!(is_sprocket(&c24, &SprocketCandidate::new(sigma, w("1"), w("12"), w("14"))).holds);
    let bad = SprocketCandidate::new(sigma, w("1"), w("1"), w("1"));
    assert_eq!(is_sprocket(&c24, &bad).failed, Some(Condition::S3));
    let bad = SprocketCandidate::new(sigma, w("2"), w("1"), w("1"));
    assert_eq!(is_sprocket(&c24, &bad).failed, Some(Condition::PIIICirc));
}

#[test]
fn sprockets() {
    let expect = SprocketCandidate::new([w("3"), w("6"), w("5")], w("1"), w("12"), w("14"));
    assert_eq!(canonical_l24_sprocket(&code(C24)), Some(expect));
    let expect = SprocketCandidate::new([w("2"), w("6"), w("4")], w("1"), w("13"), w("15"));
    assert_eq!(canonical_l24_sprocket(&code(TABLE3)), Some(expect));
    // minimal L24 code whose triangle facets fail the path condition
    let no_path = minimal_code(&[w("123"), w("145"), w("167"), w("2468")]);
    assert_eq!(classify_small_complex(&nerve(&no_path.facets()).unwrap()).unwrap().class.id(), 24);
    assert_eq!(canonical_l24_sprocket(&no_path), None);

    let c24 = code(C24);
    let found = find_sprocket(&c24, DEFAULT_BUDGET).unwrap();
    assert!(is_sprocket(&c24, &found).holds);
    assert_eq!(find_sprocket(&code(C22), DEFAULT_BUDGET), None);
    let d28 = code(D28);
    assert!(is_sprocket(&d28, &find_sprocket(&d28, DEFAULT_BUDGET).unwrap()).holds);
}

#[test]
fn verdicts() {
    let d = decide(&code(C22));
    assert_eq!(d.status, Status::Convex);
    assert_eq!(
        d.certificates,
        vec![Certificate::TheoremNoLocalObstruction { case: TheoremCase::Class(NerveClass::new(22).unwrap()) }]
    );
    let d = decide(&code(C24));
    assert_eq!(d.status, Status::NonConvex);
    let expect = SprocketCandidate::new([w("3"), w("6"), w("5")], w("1"), w("12"), w("14"));
    assert_eq!(d.certificates, vec![Certificate::L24MinimalPoFSprocket { candidate: expect }]);
    let d = decide(&code("123"));
    assert_eq!((d.status, d.certificates), (Status::Convex, vec![Certificate::MaxIntersectionComplete]));

    for s in [C18A, C18B] {
        assert_eq!(decide(&code(s)).status, Status::Convex, "{s}");
    }
    for s in [TABLE3, D28] {
        assert_eq!(decide(&code(s)).status, Status::NonConvex, "{s}");
    }
    for s in [C22, C24, C18A, C18B, TABLE3, D28] {
        let c = code(s);
        for cert in decide(&c).certificates {
            assert!(replay_certificate(&c, &cert), "{s}: {cert}");
        }
    }
}

#[test]
fn c26_cases() {
    let printed = code("123,134,145,2345,13,14,23,34,45,4,5");
    let d = decide(&printed);
    assert_eq!(d.status, Status::NonConvex);
    assert_eq!(d.certificates, vec![Certificate::LocalObstruction { face: w("3") }]);
    let corrected = printed.with_codeword(w("3"));
    assert_eq!(classify_small_complex(&nerve(&corrected.facets()).unwrap()).unwrap().class.id(), 26);
    assert_eq!(is_max_intersection_complete(&corrected).1, ws(&["1"]));
    assert_ne!(decide(&corrected).status, Status::Convex);
}

#[test]
fn realizations() {
    let (r, tag) = build_realization(&code("134,1357,356,13,35")).unwrap().unwrap();
    assert_eq!(tag, ConstructionTag::PoFChain1D);
    assert_eq!(code_of_realization(&r).unwrap(), code("134,13,1357,35,356"));
    let v = verify_realization(&r, &code(C22));
    assert!(!v.ok);
    assert_eq!(v.missing.into_iter().collect::<BTreeSet<_>>(), ws(&["257", "57"]));
    assert!(v.extra.is_empty());

    let (r, tag) = build_realization(&code(C18A)).unwrap().unwrap();
    assert_eq!((tag, r.dimension), (ConstructionTag::L18Case1, 1));
    let (r, tag) = build_realization(&code(C18B)).unwrap().unwrap();
    assert_eq!((tag, r.dimension), (ConstructionTag::L18Case2, 2));
    let (r, tag) = build_realization(&code(C22)).unwrap().unwrap();
    assert_eq!((tag, r.dimension), (ConstructionTag::L22Case2b, 2));
    assert!(verify_realization(&r, &code(C22)).ok);
    assert!(build_realization(&code(C24)).is_err());
}
