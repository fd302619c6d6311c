//! The verification suites must reject broken inputs, not only accept good ones.

use proptest::prelude::*;

use nervelab::complex::{closure, Simplex};
use nervelab::corpus;
use nervelab::covers::IndexedCover;
use nervelab::geometry::{check_gamma_carried, gamma_map, pointed_cech_cover, GEOM_TOL};
use nervelab::homology::betti_z2;
use nervelab::verify::{self, Status};

fn s(v: &[usize]) -> Simplex {
    Simplex::new(v.iter().copied()).unwrap()
}

#[test]
fn duplicate_suite_rejects_non_contained_index() {
    let (c, j, _) = corpus::cover_with_duplicate(&corpus::torus7());
    // A vertex outside the extra triangle: its star cannot contain that triangle.
    let inner = c.element(j).unwrap();
    let far = c.base().vertices().iter().position(|&v| !inner.contains_vertex(v)).unwrap();
    let r = verify::verify_duplicate("torus7", &c, j, far);
    assert!(!r.passed());
    assert!(r.failures().all(|f| f.witness.get("error").is_some()));
}

#[test]
fn bjorner_suite_flags_a_disconnected_intersection() {
    // Two arcs of a square meeting in two separate points: the intersection is not connected.
    let square = closure([s(&[0, 1]), s(&[1, 2]), s(&[2, 3]), s(&[0, 3])]);
    let c = IndexedCover::from_list(square, vec![closure([s(&[0, 1]), s(&[1, 2])]), closure([s(&[2, 3]), s(&[0, 3])])])
        .unwrap();
    let r = verify::verify_bjorner("square-halves", &c, 1);
    let hyp = r.check("intersections-connected").unwrap();
    assert_eq!(hyp.status, Status::Fail);
    assert_eq!(hyp.witness["J"], "[0,1]");
    assert_eq!(r.check("H1-isomorphism").unwrap().status, Status::Fail);
}

#[test]
fn blowup_suite_skips_nerve_check_for_bad_covers() {
    let square = closure([s(&[0, 1]), s(&[1, 2]), s(&[2, 3]), s(&[0, 3])]);
    let c = IndexedCover::from_list(square, vec![closure([s(&[0, 1]), s(&[1, 2])]), closure([s(&[2, 3]), s(&[0, 3])])])
        .unwrap();
    let r = verify::verify_blowup("square-halves", &c);
    assert!(r.passed());
    assert!(r.check("betti-T-equals-nerve").is_none());
}

#[test]
fn corrupted_gamma_is_caught_with_its_index_pair() {
    let pc = pointed_cech_cover(&corpus::unit_square(), 0.75).unwrap();
    let g = gamma_map(&pc).unwrap().with_point(&s(&[0, 2]), vec![5.0, 5.0]).unwrap();
    let r = check_gamma_carried(&g, pc.cover(), GEOM_TOL).unwrap();
    assert_eq!(r.witness, Some((0, s(&[0, 2]))));
}

#[test]
fn gamma_psi_suite_reports_sample_counts() {
    let r = verify::verify_gamma_psi("equilateral", &corpus::equilateral(), 200, 1);
    assert!(r.passed());
    assert!(r.check("psi-carried").unwrap().witness["min_samples"].as_u64().unwrap() >= 200);
}

#[test]
fn functorial_suite_on_a_small_cloud() {
    let r = verify::verify_functorial("square", &corpus::unit_square(), None);
    assert!(r.passed(), "{:?}", r.checks);
}

#[test]
fn report_timings_can_be_removed() {
    let r = verify::verify_bst("edge", &corpus::edge()).without_timing();
    assert!(r.checks.iter().all(|c| c.ms == 0.0));
    let v = r.to_json();
    assert_eq!(v["checks"][0]["status"], "pass");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bst_suite_passes_on_random_complexes(seed in 0u64..10_000) {
        let k = corpus::random_2_complex(seed, 30);
        let r = verify::verify_bst("random", &k);
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn duplicate_drop_keeps_homology(seed in 0u64..10_000) {
        let k = corpus::random_2_complex(seed, 30);
        let (c, j, l) = corpus::cover_with_duplicate(&k);
        let r = verify::verify_duplicate("random", &c, j, l);
        prop_assert!(r.passed());
        let reduced = c.without(j).unwrap();
        let before = betti_z2(&nervelab::covers::nerve(&c).unwrap());
        prop_assert_eq!(betti_z2(&nervelab::covers::nerve(&reduced).unwrap()), before);
    }

    #[test]
    fn cech_and_alpha_agree_on_random_clouds(seed in 0u64..10_000, n in 3usize..10) {
        let r = verify::verify_cech_alpha("random", &corpus::random_cloud(seed, n), 1e-9);
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
