//! The injective model on bounded complexes: every complex is cofibrant, the
//! trivial objects are the acyclic complexes and the fibrant objects are the
//! complexes of injectives.

use crate::diagram::FinitePoset;
use crate::error::Result;
use crate::homotopy_algebra::{CotorsionPair, ObjectClass, Rep};
use crate::model_structures::HoveyTriple;

use super::ComplexCategory;

/// Degrees added below and above a working window so that approximations of
/// complexes supported in the window stay clear of the window edges.
pub const MARGIN_BELOW: i64 = 2;
pub const MARGIN_ABOVE: i64 = 3;

impl ComplexCategory {
    /// A category whose degree window extends lo..=hi by the model margins.
    pub fn with_margin(poset: &FinitePoset, lo: i64, hi: i64) -> Result<Self> {
        Self::new(poset, lo - MARGIN_BELOW, hi + MARGIN_ABOVE)
    }

    pub fn acyclic_class(&self) -> ObjectClass {
        let cat = self.clone();
        ObjectClass::new("acyclic", move |x| cat.is_acyclic(x))
    }

    pub fn injective_components_class(&self) -> ObjectClass {
        let cat = self.clone();
        ObjectClass::new("injective components", move |x| {
            cat.layout().degrees().all(|n| cat.component(x, n).is_injective())
        })
    }

    fn discs_of_simples(&self) -> Vec<Rep> {
        let l = self.layout();
        (l.lo..l.hi)
            .flat_map(|n| (0..self.base.len()).map(move |v| (v, n)))
            .map(|(v, n)| self.disc(&Rep::simple(&self.base, v), n).expect("inside the window"))
            .collect()
    }

    fn spheres_of_injectives(&self) -> Vec<Rep> {
        let l = self.layout();
        l.degrees()
            .flat_map(|n| (0..self.base.len()).map(move |v| (v, n)))
            .map(|(v, n)| self.sphere(&Rep::injective(&self.base, v), n).expect("inside the window"))
            .collect()
    }
}

/// (all, acyclic, injective components) with approximations generated by the
/// simple complexes and by the discs on simples respectively.
pub fn injective_model(cat: &ComplexCategory) -> HoveyTriple {
    let simples: Vec<Rep> = (0..cat.quiver.len()).map(|v| Rep::simple(&cat.quiver, v)).collect();
    let cofibrant_engine = CotorsionPair {
        left: ObjectClass::all(),
        right: ObjectClass::all(),
        generators: simples.clone(),
        right_witnesses: Vec::new(),
        left_witnesses: simples,
    };
    let discs = cat.discs_of_simples();
    let fibrant_engine = CotorsionPair {
        left: ObjectClass::all(),
        right: ObjectClass::all(),
        generators: discs.clone(),
        right_witnesses: cat.spheres_of_injectives(),
        left_witnesses: discs,
    };
    HoveyTriple::new(
        "injective complexes",
        ObjectClass::all(),
        cat.acyclic_class(),
        cat.injective_components_class(),
        cofibrant_engine,
        fibrant_engine,
    )
}
