//! Cotorsion pairs lifted to acyclic complexes, the Ext¹ comparison between
//! spheres and cycle objects, and chain homotopies.

use super::bounded::{BoundedComplex, ComplexMorphism};
use super::ComplexCategory;
use crate::diagram::DiagMorphism;
use crate::error::{Error, Result};
use crate::homotopy_algebra::quiver::factor_through_mono;
use crate::homotopy_algebra::{ext1, horseshoe, Conflation, CotorsionPair, Horseshoe, Mor, Rep};

/// 0 -> X -> B -> A -> 0 for an acyclic X, spliced from horseshoes over the
/// conflations Z^n -> X^n -> Z^{n+1}.
#[derive(Clone, Debug)]
pub struct LiftedApproximation {
    pub conflation: Conflation,
    /// One horseshoe per degree of the window; empty when X was already in the right tilde class.
    pub horseshoes: Vec<(i64, Horseshoe)>,
    pub b_in_tilde: bool,
    pub a_in_tilde: bool,
}

impl LiftedApproximation {
    pub fn is_valid(&self) -> bool {
        self.conflation.is_exact() && self.b_in_tilde && self.a_in_tilde
    }
}

fn approximate(pair: &CotorsionPair, z: &Rep, budget: usize) -> Result<Conflation> {
    if z.is_zero() {
        return Ok(Conflation::split(z, z));
    }
    pair.right_approximation(z, budget)
}

pub fn lift_cotorsion(
    pair: &CotorsionPair,
    cat: &ComplexCategory,
    x: &Rep,
    budget: usize,
) -> Result<LiftedApproximation> {
    if !cat.is_acyclic(x) {
        return Err(Error::Invalid("lifted approximations need an acyclic complex".into()));
    }
    if cat.is_in_tilde(&pair.right, x) {
        let zero = cat.zero();
        return Ok(LiftedApproximation {
            conflation: Conflation::new(Mor::identity(x), Mor::zero(x, &zero)),
            horseshoes: Vec::new(),
            b_in_tilde: true,
            a_in_tilde: cat.is_in_tilde(&pair.left, &zero),
        });
    }
    let (lo, hi) = (cat.lo(), cat.hi());
    let cycles: Vec<(Rep, Mor)> = (lo..=hi + 1).map(|n| cat.cycles(x, n)).collect();
    let approx = cycles.iter().map(|(z, _)| approximate(pair, z, budget)).collect::<Result<Vec<_>>>()?;
    let mut shoes = Vec::new();
    for n in lo..=hi {
        let k = (n - lo) as usize;
        let onto = factor_through_mono(&cycles[k + 1].1, &cat.differential(x, n)).expect("∂ lands in the cycles");
        let row = Conflation::new(cycles[k].1.clone(), onto);
        shoes.push(horseshoe(&row, &approx[k], &approx[k + 1])?);
    }
    let at = |n: i64| &shoes[(n - lo) as usize];
    let splice = |rows: &dyn Fn(&Horseshoe) -> &Conflation| -> Result<Rep> {
        let comps: Vec<Rep> = (lo..=hi).map(|n| rows(at(n)).middle().clone()).collect();
        let diffs: Vec<Mor> = (lo..hi).map(|n| rows(at(n)).deflation.then(&rows(at(n + 1)).inflation)).collect();
        cat.assemble(lo, &comps, &diffs)
    };
    let b = splice(&|h| &h.b_row)?;
    let a = splice(&|h| &h.a_row)?;
    let inflation = cat.assemble_map(x, &b, |n| at(n).middle.inflation.clone())?;
    let deflation = cat.assemble_map(&b, &a, |n| at(n).middle.deflation.clone())?;
    Ok(LiftedApproximation {
        b_in_tilde: cat.is_in_tilde(&pair.right, &b),
        a_in_tilde: cat.is_in_tilde(&pair.left, &a),
        conflation: Conflation::new(inflation, deflation),
        horseshoes: (lo..=hi).zip(shoes).collect(),
    })
}

/// dim Ext¹(X, Zⁿ(Y)) against dim Ext¹(Sⁿ(X), Y), the latter computed among complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtAdjunctionReport {
    pub degree: i64,
    pub cycles_side: usize,
    pub complex_side: usize,
    pub acyclic: bool,
}

impl ExtAdjunctionReport {
    /// The comparison map can only be injective.
    pub fn mono(&self) -> bool {
        self.cycles_side <= self.complex_side
    }

    pub fn iso(&self) -> bool {
        self.cycles_side == self.complex_side
    }

    pub fn holds(&self) -> bool {
        self.mono() && (!self.acyclic || self.iso())
    }
}

pub fn ext_adjunction_check(cat: &ComplexCategory, x: &Rep, y: &Rep, n: i64) -> Result<ExtAdjunctionReport> {
    let sphere = cat.sphere(x, n)?;
    Ok(ExtAdjunctionReport {
        degree: n,
        cycles_side: ext1(x, &cat.cycles(y, n).0),
        complex_side: ext1(&sphere, y),
        acyclic: cat.is_acyclic(y),
    })
}

/// Maps sⁿ: Xⁿ -> Yⁿ⁻¹, stored on the degrees of the source.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    pub source: BoundedComplex,
    pub target: BoundedComplex,
    pub maps: Vec<DiagMorphism>,
}

impl ChainHomotopy {
    pub fn new(source: BoundedComplex, target: BoundedComplex, maps: Vec<DiagMorphism>) -> Result<Self> {
        if maps.len() != source.components.len() {
            return Err(Error::Invalid("need one map per source degree".into()));
        }
        for (n, s) in source.degrees().zip(&maps) {
            if s.source != source.component(n) || s.target != target.component(n - 1) {
                return Err(Error::TypeMismatch(format!("homotopy component in degree {n} has the wrong ends")));
            }
        }
        Ok(Self { source, target, maps })
    }

    pub fn component(&self, n: i64) -> DiagMorphism {
        if self.source.degrees().contains(&n) {
            self.maps[(n - self.source.lo) as usize].clone()
        } else {
            DiagMorphism::zero(&self.source.component(n), &self.target.component(n - 1))
        }
    }

    /// ∂s + s∂.
    pub fn boundary(&self) -> Result<ComplexMorphism> {
        let maps = self
            .source
            .degrees()
            .map(|n| {
                let down = self.component(n).then(&self.target.differential(n - 1))?;
                let up = self.source.differential(n).then(&self.component(n + 1))?;
                Ok(down.add(&up))
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMorphism::new(self.source.clone(), self.target.clone(), maps)
    }

    /// Whether f − g = ∂s + s∂.
    pub fn relates(&self, f: &ComplexMorphism, g: &ComplexMorphism) -> Result<bool> {
        let b = self.boundary()?;
        for n in self.source.degrees() {
            if !f.component(n).sub(&g.component(n)).equals(&b.component(n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{chain_rep, simple, DiagModule, FinitePoset};
    use crate::homotopy_algebra::DEFAULT_BUDGET;

    fn cat() -> ComplexCategory {
        ComplexCategory::new(&FinitePoset::chain(2), -2, 2).unwrap()
    }

    #[test]
    fn lifted_injective_pair_on_a_disc() {
        let cat = cat();
        let pair = CotorsionPair::injective(&cat.base);
        let s1 = cat.sphere(&Rep::simple(&cat.base, 1), 0).unwrap();
        let x = cat.cone(&Mor::identity(&s1)).unwrap();
        let out = lift_cotorsion(&pair, &cat, &x, DEFAULT_BUDGET).unwrap();
        assert!(out.is_valid());
        assert!(!out.horseshoes.is_empty());
        assert!(cat.component(out.conflation.middle(), -1).is_injective());
    }

    #[test]
    fn lifted_pair_on_trivial_inputs() {
        let cat = cat();
        let pair = CotorsionPair::injective(&cat.base);
        let zero = lift_cotorsion(&pair, &cat, &cat.zero(), DEFAULT_BUDGET).unwrap();
        assert!(zero.is_valid() && zero.conflation.middle().is_zero());
        let inj = cat.disc(&Rep::injective(&cat.base, 0), 0).unwrap();
        let same = lift_cotorsion(&pair, &cat, &inj, DEFAULT_BUDGET).unwrap();
        assert_eq!(same.conflation.middle(), &inj);
        let s = cat.sphere(&Rep::simple(&cat.base, 0), 0).unwrap();
        assert!(lift_cotorsion(&pair, &cat, &s, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn ext_adjunction_on_discs_and_spheres() {
        let cat = cat();
        let (s0, s1) = (Rep::simple(&cat.base, 0), Rep::simple(&cat.base, 1));
        let disc = cat.disc(&s1, 0).unwrap();
        let r = ext_adjunction_check(&cat, &s0, &disc, 1).unwrap();
        assert!(r.acyclic && r.iso() && r.cycles_side == 1);
        let sphere = cat.sphere(&s1, 1).unwrap();
        let r = ext_adjunction_check(&cat, &s1, &sphere, 0).unwrap();
        assert_eq!((r.cycles_side, r.complex_side), (0, 1));
        assert!(r.holds() && !r.iso());
        let r = ext_adjunction_check(&cat, &Rep::zero(&cat.base), &sphere, 0).unwrap();
        assert_eq!((r.cycles_side, r.complex_side), (0, 0));
    }

    #[test]
    fn identity_of_a_disc_is_null_homotopic() {
        let rep = chain_rep(2);
        let m = simple(&rep, 0);
        let d = BoundedComplex::disc(&m, 0);
        let zero = DiagMorphism::zero(&m, &DiagModule::zero(rep.clone()).unwrap());
        let s = ChainHomotopy::new(d.clone(), d.clone(), vec![zero, DiagMorphism::identity(&m)]).unwrap();
        assert!(s.relates(&ComplexMorphism::identity(&d), &ComplexMorphism::zero(&d, &d)).unwrap());
        assert!(!s.relates(&ComplexMorphism::zero(&d, &d), &ComplexMorphism::zero(&d, &d)).unwrap());
    }

    #[test]
    fn cone_detects_quasi_isomorphisms() {
        let cat = cat();
        let s0 = Rep::simple(&cat.base, 0);
        let x = cat.sphere(&s0, 0).unwrap();
        let id = Mor::identity(&x);
        assert!(cat.is_quasi_isomorphism(&id) && cat.is_acyclic(&cat.cone(&id).unwrap()));
        let zero = Mor::zero(&x, &x);
        assert!(!cat.is_quasi_isomorphism(&zero) && !cat.is_acyclic(&cat.cone(&zero).unwrap()));
    }
}
