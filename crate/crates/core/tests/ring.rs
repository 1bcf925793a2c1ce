mod common;

use common::arb_complex;
use mal_core::corpus::standard_corpus;
use mal_core::hochster::{cup_product, product_length, ClassRef, CohomologyClass};
use mal_core::{decompose, generate_stacked_sphere, BigradedTable, SimplicialComplex};
use proptest::prelude::*;

fn coords(t: &BigradedTable, c: &CohomologyClass) -> Vec<i64> {
    t.coordinates(c).unwrap()
}

fn generators(t: &BigradedTable) -> Vec<CohomologyClass> {
    t.generator_refs().into_iter().map(|r: ClassRef| t.class(r).unwrap()).collect()
}

/// `a + δc` for a cochain `c` one degree lower, built from `seed`.
fn perturb(t: &BigradedTable, a: &CohomologyClass, seed: u64) -> CohomologyClass {
    let basis = t.basis(a.subset);
    let below = a.degree - 1;
    if below < -1 || basis.size(below) == 0 {
        return a.clone();
    }
    let c: Vec<i64> = (0..basis.size(below)).map(|i| ((seed >> (i % 60)) & 3) as i64 - 1).collect();
    let d = basis.coboundary(below, &c).unwrap();
    CohomologyClass {
        degree: a.degree,
        subset: a.subset,
        cochain: a.cochain.iter().zip(&d).map(|(x, y)| x + y).collect(),
    }
}

fn check_ring_laws(t: &BigradedTable, seed: u64) -> Result<(), TestCaseError> {
    let gens = generators(t);
    let unit = t.unit();
    for a in &gens {
        prop_assert_eq!(coords(t, &cup_product(t, &unit, a).unwrap()), coords(t, a));
        prop_assert_eq!(coords(t, &cup_product(t, a, &unit).unwrap()), coords(t, a));
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if !a.subset.is_disjoint(b.subset) {
                continue;
            }
            let ab = cup_product(t, a, b).unwrap();
            let ba = cup_product(t, b, a).unwrap();
            let sign = if (a.degree + 1) * (b.degree + 1) % 2 == 0 { 1 } else { -1 };
            let ab_c = coords(t, &ab);
            prop_assert_eq!(&ab_c, &coords(t, &ba).iter().map(|x| sign * x).collect::<Vec<_>>());

            let a2 = perturb(t, a, seed.wrapping_add(i as u64));
            let b2 = perturb(t, b, seed.rotate_left(7).wrapping_add(j as u64));
            prop_assert_eq!(&coords(t, &cup_product(t, &a2, &b2).unwrap()), &ab_c);

            for c in gens.iter().filter(|c| c.subset.is_disjoint(a.subset.union(b.subset))).take(4) {
                let left = cup_product(t, &ab, c).unwrap();
                let right = cup_product(t, a, &cup_product(t, b, c).unwrap()).unwrap();
                prop_assert_eq!(coords(t, &left), coords(t, &right));
            }
        }
    }
    Ok(())
}

/// Joins and stacked spheres, where many products are nonzero.
fn product_rich() -> impl Strategy<Value = SimplicialComplex> {
    prop_oneof![
        (arb_complex(4), arb_complex(3)).prop_map(|(a, b)| a.join(&b)),
        (1usize..=2, 0usize..=3, any::<u64>())
            .prop_map(|(d, cuts, seed)| generate_stacked_sphere(d, cuts, seed).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws_on_random_complexes(k in product_rich(), seed in any::<u64>()) {
        let t = decompose(&k).unwrap();
        check_ring_laws(&t, seed)?;
    }
}

#[test]
fn ring_laws_on_small_corpus() {
    for (name, k) in standard_corpus() {
        if k.vertex_count() <= 7 {
            let t = decompose(&k).unwrap();
            check_ring_laws(&t, 0x9e37_79b9).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}

#[test]
fn product_length_is_bounded_by_dimension() {
    for (name, k) in standard_corpus() {
        if k.vertex_count() > 9 {
            continue;
        }
        let t = decompose(&k).unwrap();
        let len = product_length(&t).unwrap();
        assert!(len <= (k.dim() + 1) as usize, "{name}: length {len}");
    }
    for n in 1..=4 {
        let t = decompose(&SimplicialComplex::cross_polytope(n)).unwrap();
        assert_eq!(product_length(&t).unwrap(), n, "cross-polytope {n}");
    }
}
