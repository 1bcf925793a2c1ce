mod common;

use common::spheres;
use mal_core::classify::{classify_2sphere, weak_min_non_golod, Case};
use mal_core::corpus::builtin;
use mal_core::{classify_complex, decompose, generate_stacked_sphere, SimplicialComplex};
use proptest::prelude::*;

#[test]
fn two_sphere_conditions_coincide_on_corpus() {
    let octahedron = SimplicialComplex::cross_polytope(3);
    let mut seen = 0;
    for (name, k) in spheres() {
        if k.dim() != 2 || k == octahedron {
            continue;
        }
        seen += 1;
        let t = decompose(&k).unwrap();
        let r = classify_2sphere(&t).unwrap();
        let eq = r.two_sphere.clone().unwrap();
        assert!(eq.consistent(), "{name}: {eq:?}");
        assert_eq!(r.case == Case::Chordal, eq.chordal, "{name}");
        if k != SimplicialComplex::simplex_boundary(4) {
            assert_eq!(weak_min_non_golod(&t).unwrap().weak_min_non_golod, eq.chordal, "{name}");
        }
    }
    assert!(seen >= 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn stacked_two_spheres_are_chordal_and_min_non_golod(cuts in 1usize..=6, seed in any::<u64>()) {
        let k = generate_stacked_sphere(2, cuts, seed).unwrap();
        let t = decompose(&k).unwrap();
        let r = classify_2sphere(&t).unwrap();
        prop_assert_eq!(r.case, Case::Chordal);
        prop_assert!(r.two_sphere.unwrap().consistent());
        prop_assert!(weak_min_non_golod(&t).unwrap().weak_min_non_golod);
    }

    /// Subdividing a facet of a non-chordal sphere keeps its chordless
    /// cycle, so it stays non-chordal and gets no case.
    #[test]
    fn subdivided_suspensions_stay_unclassified(p in 5usize..=6, pick in any::<usize>()) {
        let s0 = SimplicialComplex::new(2, &[vec![1], vec![2]]).unwrap();
        let k = SimplicialComplex::polygon(p).join(&s0);
        let f = k.facets()[pick % k.facets().len()];
        let k = k.stellar_subdivide_facet(f).unwrap();
        let r = classify_complex(&k).unwrap();
        prop_assert_eq!(r.case, Case::None);
        prop_assert!(r.two_sphere.unwrap().consistent());
    }
}

#[test]
fn three_sphere_cases() {
    let r = classify_complex(&builtin("c4-join-triangle").unwrap()).unwrap();
    assert_eq!(r.case, Case::TwoMissingEdges);
    assert_eq!(classify_complex(&builtin("c5-join-triangle").unwrap()).unwrap().case, Case::None);
    assert_eq!(classify_complex(&SimplicialComplex::cross_polytope(4)).unwrap().case, Case::CrossPolytope);
    let simplex = classify_complex(&SimplicialComplex::simplex_boundary(5)).unwrap();
    assert_eq!(simplex.case, Case::Chordal);
    assert_eq!(simplex.presentation.unwrap().generators.len(), 0);
    let b = classify_complex(&builtin("barnette").unwrap()).unwrap();
    assert!(b.certificate.is_sphere());
    assert_eq!(b.case == Case::Chordal, b.chordality.is_chordal());
    let stacked = classify_complex(&generate_stacked_sphere(3, 4, 11).unwrap()).unwrap();
    assert_eq!(stacked.case, Case::Chordal);
    assert!(stacked.verification.unwrap().passed);
}

#[test]
fn non_spheres_are_informational() {
    for name in ["rp2", "torus7"] {
        let r = classify_complex(&builtin(name).unwrap()).unwrap();
        assert!(!r.certificate.is_sphere(), "{name}");
        assert_eq!(r.case, Case::None);
        assert!(r.presentation.is_none());
    }
}
