//! Bounded cochain complexes of diagram modules, their morphisms, shifts and
//! tensor products, and conversion to the quiver engine for field diagrams.

use std::sync::Arc;

use super::ComplexCategory;
use crate::diagram::{cokernel, direct_sum, tensor, tensor_morphisms, DiagModule, DiagMorphism, RingRep};
use crate::error::{Error, Result};
use crate::exact_arith::{RingElement, RingMatrix};
use crate::homotopy_algebra::{Mor, Rep};

fn sign(k: i64) -> RingElement {
    if k.rem_euclid(2) == 0 {
        RingElement::one()
    } else {
        RingElement::int(-1)
    }
}

/// A module with a fixed decomposition into summands, recorded by generator offsets per vertex.
pub(crate) struct Summed {
    pub module: DiagModule,
    pub parts: Vec<DiagModule>,
}

impl Summed {
    pub fn new(rep: &Arc<RingRep>, parts: Vec<DiagModule>) -> Result<Self> {
        let mut module = DiagModule::zero(rep.clone())?;
        for p in &parts {
            module = direct_sum(&module, p)?.sum;
        }
        Ok(Self { module, parts })
    }

    fn offset(&self, vertex: usize, part: usize) -> usize {
        self.parts[..part].iter().map(|p| p.gens(vertex)).sum()
    }

    /// A morphism between sums from its nonzero blocks.
    pub fn block_map(&self, target: &Summed, blocks: &[((usize, usize), DiagMorphism)]) -> Result<DiagMorphism> {
        let comps = (0..self.module.len())
            .map(|v| {
                let mut m = RingMatrix::zeros(target.module.carrier(v), target.module.gens(v), self.module.gens(v));
                for ((t, s), b) in blocks {
                    let (r0, c0) = (target.offset(v, *t), self.offset(v, *s));
                    let c = &b.components[v];
                    for r in 0..c.rows() {
                        for k in 0..c.cols() {
                            m.set(r0 + r, c0 + k, c.get(r, k).clone());
                        }
                    }
                }
                m
            })
            .collect();
        DiagMorphism::new(self.module.clone(), target.module.clone(), comps)
    }
}

/// X^lo -> X^{lo+1} -> ... -> X^hi with ∂^{n+1} ∘ ∂^n = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    pub rep: Arc<RingRep>,
    pub lo: i64,
    pub components: Vec<DiagModule>,
    /// `differentials[k]` maps `components[k]` to `components[k + 1]`.
    pub differentials: Vec<DiagMorphism>,
}

impl BoundedComplex {
    pub fn new(
        rep: Arc<RingRep>,
        lo: i64,
        components: Vec<DiagModule>,
        differentials: Vec<DiagMorphism>,
    ) -> Result<Self> {
        if differentials.len() + 1 != components.len().max(1) {
            return Err(Error::Invalid("need one differential between consecutive components".into()));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source != components[k] || d.target != components[k + 1] {
                return Err(Error::TypeMismatch(format!(
                    "differential in degree {} has the wrong ends",
                    lo + k as i64
                )));
            }
            if !d.validate().is_valid() {
                return Err(Error::Invalid(format!("differential in degree {} is not a morphism", lo + k as i64)));
            }
        }
        let x = Self { rep, lo, components, differentials };
        if let Some(n) = x.first_nonzero_square()? {
            return Err(Error::Invalid(format!("∂∘∂ ≠ 0 starting in degree {n}")));
        }
        Ok(x)
    }

    pub fn zero(rep: &Arc<RingRep>) -> Self {
        Self { rep: rep.clone(), lo: 0, components: Vec::new(), differentials: Vec::new() }
    }

    pub fn sphere(m: &DiagModule, n: i64) -> Self {
        Self { rep: m.rep.clone(), lo: n, components: vec![m.clone()], differentials: Vec::new() }
    }

    pub fn disc(m: &DiagModule, n: i64) -> Self {
        Self {
            rep: m.rep.clone(),
            lo: n,
            components: vec![m.clone(), m.clone()],
            differentials: vec![DiagMorphism::identity(m)],
        }
    }

    /// The tensor unit S⁰(R).
    pub fn unit(rep: &Arc<RingRep>) -> Result<Self> {
        Ok(Self::sphere(&DiagModule::unit(rep.clone())?, 0))
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn component(&self, n: i64) -> DiagModule {
        if self.degrees().contains(&n) {
            self.components[(n - self.lo) as usize].clone()
        } else {
            DiagModule::zero(self.rep.clone()).expect("zero module")
        }
    }

    pub fn differential(&self, n: i64) -> DiagMorphism {
        if self.degrees().contains(&n) && self.degrees().contains(&(n + 1)) {
            self.differentials[(n - self.lo) as usize].clone()
        } else {
            DiagMorphism::zero(&self.component(n), &self.component(n + 1))
        }
    }

    /// The first degree n with ∂^{n+1} ∘ ∂^n ≠ 0.
    pub fn first_nonzero_square(&self) -> Result<Option<i64>> {
        for w in self.differentials.windows(2).enumerate() {
            let (k, pair) = w;
            if !pair[0].then(&pair[1])?.is_zero()? {
                return Ok(Some(self.lo + k as i64));
            }
        }
        Ok(None)
    }

    pub fn is_zero(&self) -> Result<bool> {
        for c in &self.components {
            if !c.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// X[k]: (X[k])^n = X^{n+k}, differential scaled by (−1)^k.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            rep: self.rep.clone(),
            lo: self.lo - k,
            components: self.components.clone(),
            differentials: self.differentials.iter().map(|d| d.scale(&sign(k))).collect(),
        }
    }

    fn tensor_terms(&self, other: &Self, n: i64) -> Vec<(i64, i64)> {
        self.degrees().filter(|i| other.degrees().contains(&(n - i))).map(|i| (i, n - i)).collect()
    }

    fn tensor_component(&self, other: &Self, n: i64) -> Result<(Vec<(i64, i64)>, Summed)> {
        let terms = self.tensor_terms(other, n);
        let parts =
            terms.iter().map(|&(i, j)| tensor(&self.component(i), &other.component(j))).collect::<Result<Vec<_>>>()?;
        Ok((terms, Summed::new(&self.rep, parts)?))
    }

    /// (X ⊗ Y)^n = ⊕_{i+j=n} X^i ⊗ Y^j with ∂ = ∂_X ⊗ 1 + (−1)^i 1 ⊗ ∂_Y.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.components.is_empty() || other.components.is_empty() {
            return Ok(Self::zero(&self.rep));
        }
        let (lo, hi) = (self.lo + other.lo, self.hi() + other.hi());
        let sums = (lo..=hi).map(|n| self.tensor_component(other, n)).collect::<Result<Vec<_>>>()?;
        let mut differentials = Vec::new();
        for w in sums.windows(2) {
            let ((src_terms, src), (tgt_terms, tgt)) = (&w[0], &w[1]);
            let mut blocks = Vec::new();
            for (s, &(i, j)) in src_terms.iter().enumerate() {
                if let Some(t) = tgt_terms.iter().position(|&p| p == (i + 1, j)) {
                    let dx = tensor_morphisms(&self.differential(i), &DiagMorphism::identity(&other.component(j)))?;
                    blocks.push(((t, s), dx));
                }
                if let Some(t) = tgt_terms.iter().position(|&p| p == (i, j + 1)) {
                    let dy = tensor_morphisms(&DiagMorphism::identity(&self.component(i)), &other.differential(j))?;
                    blocks.push(((t, s), dy.scale(&sign(i))));
                }
            }
            differentials.push(src.block_map(tgt, &blocks)?);
        }
        let components = sums.into_iter().map(|(_, s)| s.module).collect();
        Self::new(self.rep.clone(), lo, components, differentials)
    }

    /// Converts a complex over a constant field diagram into the quiver of complexes.
    pub fn to_rep(&self, cat: &ComplexCategory) -> Result<Rep> {
        let components = self.components.iter().map(|c| Rep::from_diag(&cat.base, c)).collect::<Result<Vec<_>>>()?;
        let differentials =
            self.differentials.iter().map(|d| Mor::from_diag(&cat.base, d)).collect::<Result<Vec<_>>>()?;
        cat.assemble(self.lo, &components, &differentials)
    }

    /// The complex of a representation of the quiver of complexes, trimmed to its support.
    pub fn from_rep(cat: &ComplexCategory, x: &Rep, rep: &Arc<RingRep>) -> Result<Self> {
        let support: Vec<i64> = cat.layout().degrees().filter(|&n| !cat.component(x, n).is_zero()).collect();
        let (Some(&lo), Some(&hi)) = (support.first(), support.last()) else {
            return Ok(Self::zero(rep));
        };
        let components = (lo..=hi).map(|n| cat.component(x, n).to_diag(rep)).collect::<Result<Vec<_>>>()?;
        let differentials = (lo..hi).map(|n| cat.differential(x, n).to_diag(rep)).collect::<Result<Vec<_>>>()?;
        Self::new(rep.clone(), lo, components, differentials)
    }
}

/// A chain map, stored on the degrees of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMorphism {
    pub source: BoundedComplex,
    pub target: BoundedComplex,
    pub maps: Vec<DiagMorphism>,
}

impl ComplexMorphism {
    pub fn new(source: BoundedComplex, target: BoundedComplex, maps: Vec<DiagMorphism>) -> Result<Self> {
        if maps.len() != source.components.len() {
            return Err(Error::Invalid("need one map per source degree".into()));
        }
        let f = Self { source, target, maps };
        for n in f.source.lo - 1..=f.source.hi() {
            let left = f.component(n).then(&f.target.differential(n))?;
            let right = f.source.differential(n).then(&f.component(n + 1))?;
            if !left.equals(&right)? {
                return Err(Error::Invalid(format!("chain map does not commute in degree {n}")));
            }
        }
        Ok(f)
    }

    pub fn identity(x: &BoundedComplex) -> Self {
        Self { source: x.clone(), target: x.clone(), maps: x.components.iter().map(DiagMorphism::identity).collect() }
    }

    pub fn zero(source: &BoundedComplex, target: &BoundedComplex) -> Self {
        let maps = source.degrees().map(|n| DiagMorphism::zero(&source.component(n), &target.component(n))).collect();
        Self { source: source.clone(), target: target.clone(), maps }
    }

    pub fn component(&self, n: i64) -> DiagMorphism {
        if self.source.degrees().contains(&n) {
            self.maps[(n - self.source.lo) as usize].clone()
        } else {
            DiagMorphism::zero(&self.source.component(n), &self.target.component(n))
        }
    }

    /// f ⊗ g, acting blockwise on the summands X^i ⊗ Y^j.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let source = self.source.tensor(&other.source)?;
        let target = self.target.tensor(&other.target)?;
        if source.components.is_empty() {
            return Ok(Self::zero(&source, &target));
        }
        let maps = source
            .degrees()
            .map(|n| {
                let (src_terms, src) = self.source.tensor_component(&other.source, n)?;
                let (tgt_terms, tgt) = self.target.tensor_component(&other.target, n)?;
                let mut blocks = Vec::new();
                for (s, pair) in src_terms.iter().enumerate() {
                    if let Some(t) = tgt_terms.iter().position(|p| p == pair) {
                        blocks.push(((t, s), tensor_morphisms(&self.component(pair.0), &other.component(pair.1))?));
                    }
                }
                let m = src.block_map(&tgt, &blocks)?;
                // the target may live on a wider range; re-target onto its component
                DiagMorphism::new(m.source, target.component(n), m.components)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, maps)
    }

    pub fn then(&self, after: &Self) -> Result<Self> {
        let maps =
            self.source.degrees().map(|n| self.component(n).then(&after.component(n))).collect::<Result<Vec<_>>>()?;
        Self::new(self.source.clone(), after.target.clone(), maps)
    }

    /// The degreewise cokernel, presented on the generators of the target.
    pub fn cokernel(&self) -> Result<(BoundedComplex, ComplexMorphism)> {
        let y = &self.target;
        let parts = y.degrees().map(|n| cokernel(&self.component(n))).collect::<Result<Vec<_>>>()?;
        let components: Vec<DiagModule> = parts.iter().map(|(c, _)| c.clone()).collect();
        let differentials = y
            .differentials
            .iter()
            .enumerate()
            .map(|(k, d)| DiagMorphism::new(components[k].clone(), components[k + 1].clone(), d.components.clone()))
            .collect::<Result<Vec<_>>>()?;
        let c = BoundedComplex::new(y.rep.clone(), y.lo, components, differentials)?;
        let projection = ComplexMorphism::new(y.clone(), c.clone(), parts.into_iter().map(|(_, p)| p).collect())?;
        Ok((c, projection))
    }

    pub fn to_mor(&self, cat: &ComplexCategory) -> Result<Mor> {
        let (x, y) = (self.source.to_rep(cat)?, self.target.to_rep(cat)?);
        let comps = cat
            .layout()
            .degrees()
            .map(|n| Mor::from_diag(&cat.base, &self.component(n)))
            .collect::<Result<Vec<_>>>()?;
        let lo = cat.lo();
        cat.assemble_map(&x, &y, |n| comps[(n - lo) as usize].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{chain_rep, hom_space, p1_rep, p1_twist_over, simple, FinitePoset};
    use crate::homotopy_algebra::is_isomorphic;

    fn twist_map(rep: &Arc<RingRep>, a: i64, b: i64, pick: usize) -> DiagMorphism {
        let (m, n) = (p1_twist_over(rep, a).unwrap(), p1_twist_over(rep, b).unwrap());
        let window = (-(a.abs() + b.abs()) - 1, a.abs() + b.abs() + 1);
        hom_space(&m, &n, Some(window)).unwrap().remove(pick)
    }

    #[test]
    fn twists_tensor_additively() {
        let rep = p1_rep();
        let x = BoundedComplex::sphere(&p1_twist_over(&rep, 2).unwrap(), 0);
        let y = BoundedComplex::sphere(&p1_twist_over(&rep, -3).unwrap(), 0);
        let t = x.tensor(&y).unwrap();
        assert_eq!(t.degrees(), 0..=0);
        assert_eq!(t.component(0).transition(1, 2), p1_twist_over(&rep, -1).unwrap().transition(1, 2));
    }

    #[test]
    fn unit_law_on_a_two_term_complex() {
        let rep = p1_rep();
        let d = twist_map(&rep, -1, 0, 1);
        let x = BoundedComplex::new(rep.clone(), 0, vec![d.source.clone(), d.target.clone()], vec![d]).unwrap();
        let xu = x.tensor(&BoundedComplex::unit(&rep).unwrap()).unwrap();
        assert_eq!(xu.degrees(), x.degrees());
        let maps = x
            .degrees()
            .map(|n| {
                let (a, b) = (xu.component(n), x.component(n));
                let ids = (0..a.len()).map(|v| RingMatrix::identity(b.carrier(v), b.gens(v))).collect();
                DiagMorphism::new(a, b, ids).unwrap()
            })
            .collect::<Vec<_>>();
        assert!(maps.iter().all(|m| m.is_iso().unwrap()));
        ComplexMorphism::new(xu, x, maps).unwrap();
    }

    #[test]
    fn tensor_signs_square_to_zero() {
        let rep = chain_rep(2);
        let cat = ComplexCategory::new(&FinitePoset::chain(2), -2, 3).unwrap();
        let (s0, s1) = (simple(&rep, 0), simple(&rep, 1));
        let d = BoundedComplex::disc(&s0, 0);
        let e = BoundedComplex::disc(&s1, 0).shift(1);
        let t = d.tensor(&e).unwrap();
        assert_eq!(t.first_nonzero_square().unwrap(), None);
        assert_eq!(t.degrees(), -1..=1);
        let as_rep = t.to_rep(&cat).unwrap();
        assert!(cat.is_acyclic(&as_rep));
        let back = BoundedComplex::from_rep(&cat, &as_rep, &rep).unwrap();
        assert!(is_isomorphic(&back.to_rep(&cat).unwrap(), &as_rep));
        let f = ComplexMorphism::identity(&d).tensor(&ComplexMorphism::identity(&e)).unwrap();
        assert_eq!(f.to_mor(&cat).unwrap(), Mor::identity(&as_rep));
    }
}
