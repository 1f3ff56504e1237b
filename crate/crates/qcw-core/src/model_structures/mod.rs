//! Exact model structures from Hovey triples: verification on finite universes,
//! morphism classes, factorizations, homotopy and the homotopy category.
//!
//! "f factors through some object of a class" is decided through the fixed
//! approximation object: a map into Y factors through an object of C∩W iff it
//! lifts along the deflation A^Y -> Y of the (C∩W, F)-approximation of Y.

pub mod morphisms;
pub mod triple;

pub use morphisms::{
    classify, cofiber_sequence, factorize, factorize_through_graph, homotopic, homotopy_hom, suspension,
    CofiberSequence, Factorization, HomotopyHom, HomotopyRelation, HomotopyReport, MorphismClassification, Which,
};
pub use triple::{frobenius_witness, verify_triple, CompletenessFailure, HoveyTriple, TripleReport, UNIVERSE_CAP};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::diagram::FinitePoset;
    use crate::homotopy_algebra::{ext1_classes, has_rlp, BoundQuiver, Mor, Rep};

    fn chain(n: usize) -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(n)))
    }

    fn universe(q: &Arc<BoundQuiver>) -> Vec<Rep> {
        let (s0, s1, p0) = (Rep::simple(q, 0), Rep::simple(q, 1), Rep::projective(q, 0));
        vec![Rep::zero(q), s0, s1.clone(), p0.clone(), p0.direct_sum(&s1)]
    }

    #[test]
    fn projective_triple_verifies() {
        let q = chain(2);
        let report = verify_triple(&HoveyTriple::projective(&q), &universe(&q)).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.closure_size, 5 + 15);
        let inj = verify_triple(&HoveyTriple::injective(&q), &universe(&q)).unwrap();
        assert!(inj.passed(), "{inj:?}");
    }

    #[test]
    fn degenerate_and_defective_triples() {
        let discrete = Arc::new(BoundQuiver::from_poset(&FinitePoset::discrete(2)));
        let u: Vec<Rep> = vec![Rep::simple(&discrete, 0), Rep::simple(&discrete, 1)];
        assert!(verify_triple(&HoveyTriple::degenerate(&discrete), &u).unwrap().passed());
        let empty = verify_triple(&HoveyTriple::degenerate(&discrete), &[]).unwrap();
        assert!(empty.passed() && empty.vacuous());

        let q = chain(2);
        let report = verify_triple(&HoveyTriple::even_dimension_defect(&q), &universe(&q)).unwrap();
        assert!(!report.passed());
        let (w, x) = report.retract_witness.clone().unwrap();
        assert!(w.total_dim() % 2 == 0 && x.total_dim() % 2 == 1);
        // total dimension is additive, so 2-out-of-3 cannot fail
        assert!(report.two_of_three());

        let big: Vec<Rep> = (0..UNIVERSE_CAP + 1).map(|_| Rep::zero(&q)).collect();
        assert!(matches!(
            verify_triple(&HoveyTriple::projective(&q), &big),
            Err(crate::Error::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn identity_classification() {
        let q = chain(2);
        let t = HoveyTriple::injective(&q);
        let c = classify(&Mor::identity(&Rep::projective(&q, 0)), &t).unwrap();
        assert!(c.cofibration && c.trivial_cofibration && c.fibration && c.trivial_fibration && c.weak_equivalence);
    }

    #[test]
    fn factorizations_lie_in_their_classes() {
        let q = chain(2);
        let t = HoveyTriple::projective(&q);
        let (s0, s1) = (Rep::simple(&q, 0), Rep::simple(&q, 1));
        let h = Mor::zero(&s0, &Rep::zero(&q));
        let fac = factorize_through_graph(&h, &t, Which::CofTFib).unwrap();
        assert_eq!(fac.left.then(&fac.right), h);
        assert!(fac.left_cokernel.is_projective());
        let zero_map = Mor::zero(&s0, &s1);
        for which in [Which::CofTFib, Which::TCofFib] {
            for triple in [HoveyTriple::projective(&q), HoveyTriple::injective(&q)] {
                let fac = factorize(&zero_map, &triple, which).unwrap();
                assert_eq!(fac.left.then(&fac.right), zero_map);
                // the left map lifts against the right map of the other system
                let other = factorize(
                    &zero_map,
                    &triple,
                    if which == Which::CofTFib { Which::TCofFib } else { Which::CofTFib },
                )
                .unwrap();
                if which == Which::CofTFib {
                    assert!(has_rlp(&fac.left, &other.right) || !triple.trivial.contains(&other.right_kernel));
                }
            }
        }
    }

    #[test]
    fn homotopy_in_the_injective_model() {
        let q = chain(2);
        let t = HoveyTriple::injective(&q);
        let (s0, s1) = (Rep::simple(&q, 0), Rep::simple(&q, 1));
        let conf = ext1_classes(&s0, &s1).remove(0);
        let f = conf.inflation.clone();
        assert_eq!(homotopic(&f, &f, &t).unwrap().relation, HomotopyRelation::Both);
        // every object is trivial, so every map is null-homotopic
        let zero = Mor::zero(&f.source, &f.target);
        assert_eq!(homotopic(&f, &zero, &t).unwrap().relation, HomotopyRelation::Both);
        assert_eq!(homotopy_hom(&s0, &s1, &t).unwrap().dimension(), 0);
    }

    #[test]
    fn cofiber_sequence_of_identity() {
        let q = chain(2);
        let t = HoveyTriple::injective(&q);
        let s1 = Rep::simple(&q, 1);
        let seq = cofiber_sequence(&Mor::identity(&s1), &t).unwrap();
        assert!(seq.is_valid());
        assert!(crate::homotopy_algebra::is_isomorphic(seq.cone(), seq.suspension.middle()));
    }
}
