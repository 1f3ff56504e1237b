//! Seeded property tests for the algebraic invariants behind the acceptance suite.

mod common;

use proptest::prelude::*;

use common::{chain, euler_oracle, gluing_cohomology, random_complex, random_mor, random_rep, rng, total};
use qcw_core::cech::{adjunction_witness, cohomology, hom_twists, inverse_image, SemilatticeRep};
use qcw_core::complexes::{hom_complexes, injective_model, BoundedComplex, ComplexCategory};
use qcw_core::diagram::{chain_rep, p1_rep, p1_twist_over, FinitePoset};
use qcw_core::homotopy_algebra::{
    cokernel, ext1, ext1_classes, generating_inflations, has_rlp, hom_dim, kernel, small_object_factorize, Mor, Rep,
    DEFAULT_BUDGET,
};
use qcw_core::model_structures::{frobenius_witness, homotopic, HomotopyRelation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_and_ext_are_additive(seed in any::<u64>(), n in 1usize..=3) {
        let q = chain(n);
        let mut r = rng(seed);
        let (x, x2, y) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let sum = x.direct_sum(&x2);
        prop_assert_eq!(hom_dim(&sum, &y), hom_dim(&x, &y) + hom_dim(&x2, &y));
        prop_assert_eq!(ext1(&sum, &y), ext1(&x, &y) + ext1(&x2, &y));
        prop_assert_eq!(ext1(&y, &sum), ext1(&y, &x) + ext1(&y, &x2));
    }

    #[test]
    fn euler_form_matches_the_oracle(seed in any::<u64>(), n in 1usize..=4) {
        let q = chain(n);
        let mut r = rng(seed);
        let (x, y) = (random_rep(&q, &mut r, 3), random_rep(&q, &mut r, 3));
        prop_assert_eq!(hom_dim(&x, &y) as i64 - ext1(&x, &y) as i64, euler_oracle(&x.dims, &y.dims));
    }

    #[test]
    fn extension_classes_are_conflations(seed in any::<u64>()) {
        let q = chain(3);
        let mut r = rng(seed);
        let (x, z) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let classes = ext1_classes(&z, &x);
        prop_assert_eq!(classes.len(), ext1(&z, &x));
        for c in &classes {
            prop_assert!(c.is_exact());
            prop_assert_eq!(c.left(), &x);
            prop_assert_eq!(c.right(), &z);
        }
    }

    #[test]
    fn kernels_and_cokernels_are_exact(seed in any::<u64>()) {
        let q = chain(3);
        let mut r = rng(seed);
        let (x, y) = (random_rep(&q, &mut r, 3), random_rep(&q, &mut r, 3));
        let f = random_mor(&x, &y, &mut r);
        let (_, inc) = kernel(&f);
        let (_, proj) = cokernel(&f);
        prop_assert!(inc.is_mono() && proj.is_epi());
        prop_assert!(inc.then(&f).is_zero() && f.then(&proj).is_zero());
        let rank_sum: usize = inc.source.dims.iter().sum::<usize>() + proj.target.dims.iter().sum::<usize>();
        prop_assert_eq!(rank_sum + 2 * (x.total_dim() - inc.source.total_dim()), x.total_dim() + y.total_dim());
    }

    #[test]
    fn small_object_factors_compose(seed in any::<u64>()) {
        let q = chain(2);
        let mut r = rng(seed);
        let (x, y) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let h = random_mor(&x, &y, &mut r);
        let gens = generating_inflations(&Rep::simple(&q, 1));
        let out = small_object_factorize(&gens, &h, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(out.record.composite.then(&out.right), h);
        prop_assert!(out.record.composite.is_mono());
        prop_assert!(out.record.replay(&gens));
        prop_assert!(gens.members.iter().all(|m| has_rlp(m.inflation(), &out.right)));
        prop_assert!(out.record.filtration(&gens).validate());
    }

    #[test]
    fn cech_matches_gluing(d in -8i64..=8) {
        let rep = SemilatticeRep::new(p1_rep()).unwrap();
        let m = p1_twist_over(&rep.rep, d).unwrap();
        let table = cohomology(&rep, &m, &[0, 1], None).unwrap();
        let (h0, h1) = gluing_cohomology(d);
        prop_assert_eq!(table.total(0), total(&h0));
        prop_assert_eq!(table.total(1), total(&h1));
    }

    #[test]
    fn twist_homs_agree_two_ways(m in -4i64..=4, n in -4i64..=4) {
        let t = hom_twists(m, n).unwrap();
        prop_assert!(t.agree());
        prop_assert_eq!(t.direct, total(&gluing_cohomology(n - m).0));
    }

    #[test]
    fn adjunction_triangles_hold(d in -4i64..=4, x in 0usize..3) {
        let rep = SemilatticeRep::new(p1_rep()).unwrap();
        let m = p1_twist_over(&rep.rep, d).unwrap();
        let n = inverse_image(x, &m).unwrap();
        prop_assert!(adjunction_witness(&rep, x, &m, &n).unwrap().holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn cone_detects_quasi_isomorphisms(seed in any::<u64>()) {
        let cat = ComplexCategory::new(&FinitePoset::chain(2), -2, 2).unwrap();
        let mut r = rng(seed);
        let x = random_complex(&cat, -1, &mut r, 2);
        let y = random_complex(&cat, -1, &mut r, 2);
        for h in [random_mor(&x, &y, &mut r), Mor::identity(&x)] {
            prop_assert_eq!(cat.is_quasi_isomorphism(&h), cat.is_acyclic(&cat.cone(&h).unwrap()));
        }
    }

    #[test]
    fn tensor_and_hom_square_to_zero(seed in any::<u64>()) {
        let cat = ComplexCategory::new(&FinitePoset::chain(3), -1, 1).unwrap();
        let rep = chain_rep(3);
        let mut r = rng(seed);
        let x = BoundedComplex::from_rep(&cat, &random_complex(&cat, -1, &mut r, 1), &rep).unwrap();
        let y = BoundedComplex::from_rep(&cat, &random_complex(&cat, -1, &mut r, 1), &rep).unwrap();
        prop_assert_eq!(x.tensor(&y).unwrap().first_nonzero_square().unwrap(), None);
        prop_assert_eq!(hom_complexes(&x, &y).unwrap().first_nonzero_square().unwrap(), None);
    }
}

#[test]
fn homotopy_is_reflexive_and_symmetric_on_spheres() {
    let cat = ComplexCategory::with_margin(&FinitePoset::chain(2), 0, 0).unwrap();
    let model = injective_model(&cat);
    let x = cat.sphere(&Rep::injective(&cat.base, 0), 0).unwrap();
    let mut r = rng(11);
    let (f, g) = (random_mor(&x, &x, &mut r), random_mor(&x, &x, &mut r));
    assert_ne!(homotopic(&f, &f, &model).unwrap().relation, HomotopyRelation::Neither);
    let there = homotopic(&f, &g, &model).unwrap().relation;
    let back = homotopic(&g, &f, &model).unwrap().relation;
    assert_eq!(there, back);
}

#[test]
fn injective_model_is_frobenius_on_its_bifibrant_objects() {
    let cat = ComplexCategory::with_margin(&FinitePoset::chain(2), 0, 0).unwrap();
    let model = injective_model(&cat);
    let q = &cat.base;
    let universe: Vec<Rep> = (0..2)
        .flat_map(|v| [cat.disc(&Rep::injective(q, v), 0).unwrap(), cat.sphere(&Rep::injective(q, v), 0).unwrap()])
        .chain([cat.sphere(&Rep::simple(q, 1), 0).unwrap(), cat.disc(&Rep::injective(q, 0), -1).unwrap()])
        .collect();
    assert!(frobenius_witness(&model, &universe).is_none());
}
