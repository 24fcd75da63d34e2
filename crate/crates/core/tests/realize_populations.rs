use convex_codes::atlas::facet_systems;
use convex_codes::code::is_max_intersection_complete;
use convex_codes::realize::{build_realization, code_of_realization, verify_realization, ConstructionTag};
use convex_codes::topology::{classify_small_complex, minimal_code, nerve, path_of_facets};
use rayon::prelude::*;

/// Round-trips the minimal code. Codes settled by completeness alone may go
/// uncovered; anything built must verify.
fn round_trip(facets: &[convex_codes::Codeword]) -> Option<ConstructionTag> {
    let code = minimal_code(facets);
    let built = build_realization(&code).unwrap_or_else(|e| panic!("{code}: {e}"));
    let Some((r, tag)) = built else {
        assert!(is_max_intersection_complete(&code).0, "{code}: not covered");
        return None;
    };
    let v = verify_realization(&r, &code);
    assert!(v.ok, "{code} via {tag}: {v:?}");
    assert_eq!(code_of_realization(&r).unwrap().to_text(true), code.to_text(true));
    Some(tag)
}

#[test]
fn minimal_pof_triples_on_seven_neurons() {
    let systems: Vec<_> = facet_systems(7, 3)
        .into_iter()
        .filter(|f| nerve(f).unwrap().is_connected() && path_of_facets(f[0], f[1], f[2]).unwrap().is_some())
        .collect();
    assert!(!systems.is_empty());
    systems.par_iter().for_each(|f| {
        assert_eq!(round_trip(f).unwrap(), ConstructionTag::PoFChain1D);
    });
}

#[test]
fn minimal_l18_l21_l22_on_seven_neurons() {
    let systems: Vec<_> = facet_systems(7, 4)
        .into_iter()
        .filter(|f| {
            let class = classify_small_complex(&nerve(f).unwrap()).unwrap().class.id();
            matches!(class, 18 | 21 | 22)
        })
        .collect();
    let tags: Vec<ConstructionTag> = systems.par_iter().filter_map(|f| round_trip(f)).collect();
    for t in [
        ConstructionTag::L18Case1,
        ConstructionTag::L18Case2,
        ConstructionTag::L18Case3,
        ConstructionTag::L21CaseB1,
        ConstructionTag::L21CaseB2,
        ConstructionTag::L21CaseB3,
        ConstructionTag::L22Case2a,
        ConstructionTag::L22Case2b,
        ConstructionTag::L22Case3a,
        ConstructionTag::L22Case3b,
        ConstructionTag::L22Case4,
    ] {
        assert!(tags.contains(&t), "no code exercised {t}");
    }
}
