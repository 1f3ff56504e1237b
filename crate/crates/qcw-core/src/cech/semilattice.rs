//! Ring diagrams on upper semilattices: continuity, inverse and direct images
//! and the adjunction between them.

use std::sync::Arc;

use crate::diagram::{DiagModule, DiagMorphism, RingRep};
use crate::error::{Error, Result};
use crate::exact_arith::{base_change, solve_linear, FPModule, MonoidRing, RingMapKind, RingMatrix, RingSpec};

/// Whether R(y) ⊗_{R(x)} R(z) -> R(y ∨ z) is bijective for one pair y, z above x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityCertificate {
    pub base: usize,
    pub pair: (usize, usize),
    pub join: usize,
    pub bijective: bool,
}

/// A ring diagram whose poset has all pairwise joins.
#[derive(Clone, Debug)]
pub struct SemilatticeRep {
    pub rep: Arc<RingRep>,
    pub certificates: Vec<ContinuityCertificate>,
}

/// Exponent signs a window admits: (negative, positive).
fn signs(ring: &RingSpec) -> (bool, bool) {
    match ring {
        RingSpec::Field => (false, false),
        RingSpec::Laurent { window, .. } => (window.admits(-1), window.admits(1)),
        RingSpec::Monoid(_) => unreachable!("monoid rings are compared by generators"),
    }
}

fn window_image(rep: &RingRep, from: usize, to: usize) -> (bool, bool) {
    let map = rep.map(from, to);
    let (neg, pos) = signs(&rep.rings[from]);
    match map.kind {
        RingMapKind::FieldUnit => (false, false),
        RingMapKind::SwapInclusion => (pos, neg),
        _ => (neg, pos),
    }
}

/// Every ring map of a whitelisted diagram is a localization inside a common
/// Laurent ring, so the tensor map is injective and only surjectivity is at
/// stake (unless the base is the field): the exponents of R(y) and R(z) must generate those of R(y ∨ z).
fn tensor_is_bijective(rep: &RingRep, x: usize, y: usize, z: usize, join: usize) -> bool {
    // over the field, two non-field factors give a ring in two variables
    if rep.rings[x].is_field() {
        return rep.rings[y].is_field() || rep.rings[z].is_field();
    }
    match &rep.rings[join] {
        RingSpec::Monoid(target) => {
            let (RingSpec::Monoid(a), RingSpec::Monoid(b)) = (&rep.rings[y], &rep.rings[z]) else {
                return false;
            };
            let union = MonoidRing {
                vars: target.vars.clone(),
                generators: [a.generators.clone(), b.generators.clone()].concat(),
            };
            union.contains_ring(target) && target.contains_ring(&union)
        }
        ring => {
            let (a, b) = (window_image(rep, y, join), window_image(rep, z, join));
            (a.0 || b.0, a.1 || b.1) == signs(ring)
        }
    }
}

impl SemilatticeRep {
    pub fn new(rep: Arc<RingRep>) -> Result<Self> {
        let poset = &rep.poset;
        if !poset.is_upper_semilattice() {
            return Err(Error::Invalid(format!("the poset of {} lacks some pairwise join", rep.name)));
        }
        let mut certificates = Vec::new();
        for x in 0..rep.len() {
            let above = poset.up_set(x);
            for (k, &y) in above.iter().enumerate() {
                for &z in &above[k..] {
                    let join = poset.join(y, z).expect("semilattice");
                    certificates.push(ContinuityCertificate {
                        base: x,
                        pair: (y, z),
                        join,
                        bijective: tensor_is_bijective(&rep, x, y, z, join),
                    });
                }
            }
        }
        Ok(Self { rep, certificates })
    }

    pub fn is_continuous(&self) -> bool {
        self.certificates.iter().all(|c| c.bijective)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.rep.poset.join(x, y).expect("semilattice")
    }
}

/// M(x) as a module over R(x).
pub fn inverse_image(x: usize, m: &DiagModule) -> Result<FPModule> {
    let carrier = m.ring_at[x];
    if carrier == x {
        return Ok(m.vertices[x].clone());
    }
    Err(Error::UnsupportedRing(format!("M({}) is presented over a larger ring", m.rep.poset.label(x))))
}

/// (F_x* N)(y) = N ⊗ R(x ∨ y), with identity transitions over the larger rings.
pub fn direct_image(rep: &SemilatticeRep, x: usize, n: &FPModule) -> Result<DiagModule> {
    let r = &rep.rep;
    if n.ring != r.rings[x] {
        return Err(Error::TypeMismatch(format!(
            "direct image at {} needs a module over {}",
            r.poset.label(x),
            r.rings[x]
        )));
    }
    r.require_module_algebra()?;
    let ring_at: Vec<usize> = (0..r.len()).map(|y| rep.join(x, y)).collect();
    let vertices = ring_at.iter().map(|&w| base_change(n, &r.map(x, w))).collect::<Result<Vec<_>>>()?;
    let given = r
        .poset
        .strict_pairs()
        .into_iter()
        .map(|(y, z)| ((y, z), RingMatrix::identity(r.rings[ring_at[z]].clone(), n.gens)))
        .collect();
    DiagModule::with_carriers(r.clone(), ring_at, vertices, given)
}

/// Solves t_{b,w} · P ≡ t_{a,w} modulo the relations of M(w): the map
/// M(a) ⊗ R(w) -> M(b) ⊗ R(w) through the isomorphisms onto M(w).
pub(crate) fn through_join(m: &DiagModule, a: usize, b: usize, w: usize) -> Result<RingMatrix> {
    let carrier = m.carrier(w);
    let to_w = |v: usize| {
        if v == w {
            RingMatrix::identity(carrier.clone(), m.gens(w))
        } else {
            m.transition(v, w)
        }
    };
    let (tb, ta) = (to_w(b), to_w(a));
    let system = tb.hstack(&m.vertices[w].relations);
    let sol = solve_linear(&system, &ta)?
        .ok_or_else(|| Error::NotQuasiCoherent(m.rep.poset.label(b).to_string(), m.rep.poset.label(w).to_string()))?;
    Ok(sol.select_rows((0..m.gens(b)).collect::<Vec<_>>()))
}

/// Unit M -> F_x* F_x^* M and counit F_x^* F_x* N -> N with both triangle identities.
#[derive(Clone, Debug)]
pub struct AdjunctionWitness {
    pub unit: DiagMorphism,
    /// On generators; F_x^* F_x* N is N ⊗ R(x ∨ x) = N.
    pub counit: RingMatrix,
    /// F_x^*(η) followed by the counit at F_x^* M is the identity.
    pub left_triangle: bool,
    /// η at F_x* N followed by F_x*(counit) is the identity.
    pub right_triangle: bool,
}

impl AdjunctionWitness {
    pub fn holds(&self) -> bool {
        self.left_triangle && self.right_triangle
    }
}

/// The unit η: M -> F_x* M(x) of a quasi-coherent module.
pub fn unit(rep: &SemilatticeRep, x: usize, m: &DiagModule) -> Result<DiagMorphism> {
    let target = direct_image(rep, x, &inverse_image(x, m)?)?;
    let comps = (0..m.len())
        .map(|y| {
            let w = rep.join(x, y);
            // M(y) -> M(x) ⊗ R(x ∨ y), inverting the quasi-coherence isomorphism at x ∨ y
            let p = through_join(m, y, x, w)?;
            Ok(p.with_ring(target.carrier(y)))
        })
        .collect::<Result<Vec<_>>>()?;
    DiagMorphism::new(m.clone(), target, comps)
}

fn is_identity(module: &FPModule, p: &RingMatrix) -> Result<bool> {
    module.equal_elements(p, &RingMatrix::identity(module.ring.clone(), module.gens))
}

pub fn adjunction_witness(rep: &SemilatticeRep, x: usize, m: &DiagModule, n: &FPModule) -> Result<AdjunctionWitness> {
    let unit_m = unit(rep, x, m)?;
    let counit = RingMatrix::identity(n.ring.clone(), n.gens);
    let mx = inverse_image(x, m)?;
    let left_triangle = is_identity(&mx, &counit_at(&mx).mul(&unit_m.components[x].with_ring(mx.ring.clone())))?;
    let image = direct_image(rep, x, n)?;
    let unit_n = unit(rep, x, &image)?;
    let mut right_triangle = true;
    for y in 0..image.len() {
        let after = counit.map_ring(&rep.rep.map(x, image.ring_at[y]));
        right_triangle &= is_identity(&image.vertices[y], &after.mul(&unit_n.components[y]))?;
    }
    Ok(AdjunctionWitness { unit: unit_m, counit, left_triangle, right_triangle })
}

fn counit_at(m: &FPModule) -> RingMatrix {
    RingMatrix::identity(m.ring.clone(), m.gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{p1_rep, p1_twist_over, p2_ringrep, FinitePoset};

    #[test]
    fn p1_and_p2_are_continuous() {
        let p1 = SemilatticeRep::new(p1_rep()).unwrap();
        assert!(p1.is_continuous());
        assert!(p1.certificates.iter().any(|c| c.base == 0 && c.pair == (0, 2) && c.join == 2));
        let p2 = SemilatticeRep::new(Arc::new(p2_ringrep())).unwrap();
        assert!(p2.is_continuous());
    }

    #[test]
    fn non_semilattice_is_rejected() {
        let poset = FinitePoset::discrete(2);
        let rep = Arc::new(RingRep::constant_field("two points", poset));
        assert!(SemilatticeRep::new(rep).is_err());
    }

    #[test]
    fn broken_gluing_is_not_continuous() {
        // two copies of k[x] over k[x] glued inside k[x, x^-1]: the tensor misses negative exponents
        let labels = vec!["o".into(), "a".into(), "b".into(), "ab".into()];
        let poset = FinitePoset::new(labels.clone(), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let rings = vec![RingSpec::poly("x"), RingSpec::poly("x"), RingSpec::poly("x"), RingSpec::laurent("x")];
        let rep = Arc::new(RingRep::new("bad", poset.clone(), rings, vec![]).unwrap());
        let s = SemilatticeRep::new(rep).unwrap();
        assert!(!s.is_continuous());
        assert!(s.certificates.iter().any(|c| c.pair == (1, 2) && !c.bijective));
        // over a field base the tensor of two charts has two variables
        let rings = vec![RingSpec::Field, RingSpec::poly("x"), RingSpec::ipoly("x"), RingSpec::laurent("x")];
        let rep = Arc::new(RingRep::new("split", poset, rings, vec![]).unwrap());
        assert!(!SemilatticeRep::new(rep).unwrap().is_continuous());
    }

    #[test]
    fn direct_image_at_top_and_round_trip() {
        let rep = SemilatticeRep::new(p1_rep()).unwrap();
        let o2 = p1_twist_over(&rep.rep, 2).unwrap();
        let n = inverse_image(2, &o2).unwrap();
        let top = direct_image(&rep, 2, &n).unwrap();
        assert!(top.ring_at.iter().all(|&w| w == 2));
        assert_eq!(inverse_image(2, &top).unwrap(), n);
        let n0 = inverse_image(0, &o2).unwrap();
        let img = direct_image(&rep, 0, &n0).unwrap();
        assert_eq!(inverse_image(0, &img).unwrap(), n0);
        assert!(img.validate().is_valid());
        assert!(img.is_locally_projective().unwrap());
    }

    #[test]
    fn adjunction_on_twists() {
        let rep = SemilatticeRep::new(p1_rep()).unwrap();
        for d in [-2, 0, 3] {
            let m = p1_twist_over(&rep.rep, d).unwrap();
            for x in 0..3 {
                let n = inverse_image(x, &m).unwrap();
                let w = adjunction_witness(&rep, x, &m, &n).unwrap();
                assert!(w.holds());
            }
        }
        // the unit of O(3) at x = u0, evaluated at u1, multiplies by x^3 into k[x, x^-1]
        let m = p1_twist_over(&rep.rep, 3).unwrap();
        let eta = unit(&rep, 0, &m).unwrap();
        assert_eq!(eta.components[1].get(0, 0), &crate::exact_arith::RingElement::x_pow(3));
    }
}
