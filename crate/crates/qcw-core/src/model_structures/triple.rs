//! Hovey triples (C, W, F) and their verification on finite universes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy_algebra::{
    ext1, ext1_classes, find_retract, is_cotorsion_pair, BoundQuiver, Conflation, CotorsionPair, ObjectClass,
    PairReport, Rep, DEFAULT_BUDGET,
};

/// Largest universe `verify_triple` accepts; its closure under pairwise sums is quadratic in this.
pub const UNIVERSE_CAP: usize = 16;

/// Cofibrant, trivial and fibrant classes with the two cotorsion pairs
/// (C, W∩F) and (C∩W, F) that supply approximation sequences.
#[derive(Clone, Debug)]
pub struct HoveyTriple {
    pub name: String,
    pub cofibrant: ObjectClass,
    pub trivial: ObjectClass,
    pub fibrant: ObjectClass,
    pub cofibrant_pair: CotorsionPair,
    pub fibrant_pair: CotorsionPair,
    pub budget: usize,
}

impl HoveyTriple {
    /// The classes of the two pairs are replaced by (C, W∩F) and (C∩W, F);
    /// only their generators and witnesses are used.
    pub fn new(
        name: impl Into<String>,
        cofibrant: ObjectClass,
        trivial: ObjectClass,
        fibrant: ObjectClass,
        cofibrant_engine: CotorsionPair,
        fibrant_engine: CotorsionPair,
    ) -> Self {
        let cofibrant_pair =
            CotorsionPair { left: cofibrant.clone(), right: trivial.intersect(&fibrant), ..cofibrant_engine };
        let fibrant_pair =
            CotorsionPair { left: cofibrant.intersect(&trivial), right: fibrant.clone(), ..fibrant_engine };
        Self { name: name.into(), cofibrant, trivial, fibrant, cofibrant_pair, fibrant_pair, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// (projectives, all, all): the projective model, in which every object is trivial.
    pub fn projective(quiver: &Arc<BoundQuiver>) -> Self {
        let pair = CotorsionPair::projective(quiver);
        Self::new("projective", ObjectClass::projectives(), ObjectClass::all(), ObjectClass::all(), pair.clone(), pair)
    }

    /// (all, all, injectives).
    pub fn injective(quiver: &Arc<BoundQuiver>) -> Self {
        let pair = CotorsionPair::injective(quiver);
        Self::new("injective", ObjectClass::all(), ObjectClass::all(), ObjectClass::injectives(), pair.clone(), pair)
    }

    /// (all, all, all); a model structure only when every extension splits.
    pub fn degenerate(quiver: &Arc<BoundQuiver>) -> Self {
        let pair = CotorsionPair::projective(quiver);
        Self::new("degenerate", ObjectClass::all(), ObjectClass::all(), ObjectClass::all(), pair.clone(), pair)
    }

    /// (all, even total dimension, all), which is not a Hovey triple.
    pub fn even_dimension_defect(quiver: &Arc<BoundQuiver>) -> Self {
        let pair = CotorsionPair::injective(quiver);
        Self::new(
            "even-dimension",
            ObjectClass::all(),
            ObjectClass::even_dimension(),
            ObjectClass::all(),
            pair.clone(),
            pair,
        )
    }

    pub fn trivially_cofibrant(&self) -> &ObjectClass {
        &self.fibrant_pair.left
    }

    pub fn trivially_fibrant(&self) -> &ObjectClass {
        &self.cofibrant_pair.right
    }
}

/// An object whose approximation could not be built or landed outside the pair.
#[derive(Clone, Debug)]
pub struct CompletenessFailure {
    pub pair: String,
    pub object: Rep,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct TripleReport {
    pub triple: String,
    pub universe_size: usize,
    /// Size of the universe after adding pairwise direct sums.
    pub closure_size: usize,
    /// Retract pairs (w, x): w ∈ W, x a retract of w, x ∉ W.
    pub retract_witness: Option<(Rep, Rep)>,
    /// A conflation with two terms in W and the third outside.
    pub two_of_three_witness: Option<Conflation>,
    pub cofibrant_pair: PairReport,
    pub fibrant_pair: PairReport,
    pub completeness_failures: Vec<CompletenessFailure>,
}

impl TripleReport {
    pub fn vacuous(&self) -> bool {
        self.universe_size == 0
    }

    pub fn retract_closed(&self) -> bool {
        self.retract_witness.is_none()
    }

    pub fn two_of_three(&self) -> bool {
        self.two_of_three_witness.is_none()
    }

    pub fn complete(&self) -> bool {
        self.completeness_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.retract_closed()
            && self.two_of_three()
            && self.cofibrant_pair.is_cotorsion_pair()
            && self.fibrant_pair.is_cotorsion_pair()
            && self.complete()
    }
}

pub(crate) fn sum_closure(universe: &[Rep]) -> Vec<Rep> {
    let mut out = universe.to_vec();
    for (i, a) in universe.iter().enumerate() {
        for b in &universe[i..] {
            out.push(a.direct_sum(b));
        }
    }
    out
}

fn retract_witness(trivial: &ObjectClass, closure: &[Rep], universe: &[Rep]) -> Option<(Rep, Rep)> {
    let outside: Vec<&Rep> = universe.iter().filter(|x| !trivial.contains(x)).collect();
    closure
        .iter()
        .filter(|w| trivial.contains(w))
        .find_map(|w| outside.iter().find(|x| find_retract(x, w).is_some()).map(|x| (w.clone(), (*x).clone())))
}

fn two_of_three_witness(trivial: &ObjectClass, universe: &[Rep]) -> Option<Conflation> {
    for a in universe {
        for c in universe {
            let mut rows = ext1_classes(c, a);
            rows.push(Conflation::split(a, c));
            for row in rows {
                let inside = [row.left(), row.middle(), row.right()].iter().filter(|x| trivial.contains(x)).count();
                if inside == 2 {
                    return Some(row);
                }
            }
        }
    }
    None
}

fn completeness(pair: &CotorsionPair, label: &str, universe: &[Rep], budget: usize) -> Vec<CompletenessFailure> {
    let mut out = Vec::new();
    for x in universe {
        let fail = |reason: String| CompletenessFailure { pair: label.to_string(), object: x.clone(), reason };
        match pair.right_approximation(x, budget) {
            Ok(c) if !pair.right.contains(c.middle()) => out.push(fail(format!("B_X ∉ {}", pair.right.name))),
            Ok(c) if !pair.left.contains(c.right()) => out.push(fail(format!("A_X ∉ {}", pair.left.name))),
            Ok(_) => {}
            Err(e) => out.push(fail(e.to_string())),
        }
        match pair.left_approximation(x, budget) {
            Ok(c) if !pair.left.contains(c.middle()) => out.push(fail(format!("A^X ∉ {}", pair.left.name))),
            Ok(c) if !pair.right.contains(c.left()) => out.push(fail(format!("B^X ∉ {}", pair.right.name))),
            Ok(_) => {}
            Err(e) => out.push(fail(e.to_string())),
        }
    }
    out
}

/// Checks the Hovey axioms on `universe`: retract closure and 2-out-of-3 for W,
/// and that both pairs are complete cotorsion pairs.
pub fn verify_triple(triple: &HoveyTriple, universe: &[Rep]) -> Result<TripleReport> {
    if universe.len() > UNIVERSE_CAP {
        return Err(Error::UniverseTooLarge { size: universe.len(), cap: UNIVERSE_CAP });
    }
    let closure = sum_closure(universe);
    Ok(TripleReport {
        triple: triple.name.clone(),
        universe_size: universe.len(),
        closure_size: closure.len(),
        retract_witness: retract_witness(&triple.trivial, &closure, universe),
        two_of_three_witness: two_of_three_witness(&triple.trivial, universe),
        cofibrant_pair: is_cotorsion_pair(&triple.cofibrant_pair, universe),
        fibrant_pair: is_cotorsion_pair(&triple.fibrant_pair, universe),
        completeness_failures: [
            completeness(&triple.cofibrant_pair, "(C, W∩F)", universe, triple.budget),
            completeness(&triple.fibrant_pair, "(C∩W, F)", universe, triple.budget),
        ]
        .concat(),
    })
}

/// Objects of C∩W∩F in the universe must be Ext¹-projective and Ext¹-injective
/// among the bifibrant objects; returns a pair (ω, x) or (x, ω) with nonzero Ext¹.
pub fn frobenius_witness(triple: &HoveyTriple, universe: &[Rep]) -> Option<(Rep, Rep)> {
    let bifibrant: Vec<&Rep> =
        universe.iter().filter(|x| triple.cofibrant.contains(x) && triple.fibrant.contains(x)).collect();
    let omegas: Vec<&Rep> = bifibrant.iter().copied().filter(|x| triple.trivial.contains(x)).collect();
    for w in &omegas {
        for x in &bifibrant {
            if ext1(w, x) != 0 {
                return Some(((*w).clone(), (*x).clone()));
            }
            if ext1(x, w) != 0 {
                return Some(((*x).clone(), (*w).clone()));
            }
        }
    }
    None
}
