//! The Čech resolution 0 -> M -> C⁰M -> ... -> CⁿM -> 0 along a cover of a
//! semilattice diagram, with an explicit contracting homotopy at every vertex.

use std::collections::BTreeMap;

use super::semilattice::{direct_image, inverse_image, through_join, unit, SemilatticeRep};
use crate::diagram::{DiagModule, DiagMorphism};
use crate::error::{Error, Result};
use crate::exact_arith::{FPModule, RingElement, RingMatrix};

/// One block of a map between direct sums: source summand -> target summand.
#[derive(Clone, Debug)]
pub struct Block<T> {
    pub target: usize,
    pub source: usize,
    pub map: T,
}

/// The contracting homotopy at one vertex y, pivoting on the first cover
/// element below y. `blocks[q]` maps Cq(y) -> Cq-1(y), with C-1 = M.
#[derive(Clone, Debug)]
pub struct VertexHomotopy {
    pub vertex: usize,
    pub pivot: usize,
    pub blocks: Vec<Vec<Block<RingMatrix>>>,
}

#[derive(Clone, Debug)]
pub struct CechComplex {
    pub rep: SemilatticeRep,
    pub module: DiagModule,
    pub cover: Vec<usize>,
    /// `index_sets[p]`: increasing tuples of cover positions of length p + 1.
    pub index_sets: Vec<Vec<Vec<usize>>>,
    /// `terms[p][s]` is the direct image at x_I of M(x_I), I = `index_sets[p][s]`.
    pub terms: Vec<Vec<DiagModule>>,
    /// M -> C⁰M, one unit per cover element.
    pub augmentation: Vec<DiagMorphism>,
    /// `differentials[p]`: Cᵖ -> Cᵖ⁺¹ with the alternating signs folded in.
    pub differentials: Vec<Vec<Block<DiagMorphism>>>,
    pub homotopies: Vec<VertexHomotopy>,
}

/// Outcome of the exact checks on a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub square_zero: bool,
    /// Per vertex: ds + sd = id in every degree, including s⁰ε = id.
    pub contracting: Vec<bool>,
}

impl ResolutionReport {
    pub fn holds(&self) -> bool {
        self.square_zero && self.contracting.iter().all(|&c| c)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn grow(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            grow(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn sign(k: usize) -> RingElement {
    RingElement::int(if k % 2 == 0 { 1 } else { -1 })
}

fn check_cover(rep: &SemilatticeRep, cover: &[usize]) -> Result<()> {
    let poset = &rep.rep.poset;
    if cover.is_empty() {
        return Err(Error::CoverInvalid("the cover is empty".into()));
    }
    if let Some(&bad) = cover.iter().find(|&&c| c >= poset.len()) {
        return Err(Error::CoverInvalid(format!("vertex {bad} is out of range")));
    }
    for y in 0..poset.len() {
        let below: Vec<usize> = cover.iter().copied().filter(|&c| poset.leq(c, y)).collect();
        if below.is_empty() || poset.join_all(&below) != Some(y) {
            return Err(Error::CoverInvalid(format!("{} is not a join of cover elements", poset.label(y))));
        }
    }
    Ok(())
}

pub fn cech_resolution(rep: &SemilatticeRep, m: &DiagModule, cover: &[usize]) -> Result<CechComplex> {
    if *m.rep != *rep.rep {
        return Err(Error::TypeMismatch("module and semilattice use different ring diagrams".into()));
    }
    check_cover(rep, cover)?;
    let qc = m.is_quasicoherent()?;
    if let Some((a, b)) = qc.failing_edge {
        let poset = &rep.rep.poset;
        return Err(Error::NotQuasiCoherent(poset.label(a).into(), poset.label(b).into()));
    }
    let poset = &rep.rep.poset;
    let n = cover.len();
    let index_sets: Vec<Vec<Vec<usize>>> = (1..=n).map(|k| combinations(n, k)).collect();
    let point = |set: &[usize]| {
        let xs: Vec<usize> = set.iter().map(|&i| cover[i]).collect();
        poset.join_all(&xs).expect("semilattice")
    };
    let terms = index_sets
        .iter()
        .map(|sets| {
            sets.iter()
                .map(|set| {
                    let x = point(set);
                    direct_image(rep, x, &inverse_image(x, m)?)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let augmentation = cover.iter().map(|&x| unit(rep, x, m)).collect::<Result<Vec<_>>>()?;

    let mut differentials = Vec::new();
    for p in 0..n.saturating_sub(1) {
        let mut blocks = Vec::new();
        for (t, big) in index_sets[p + 1].iter().enumerate() {
            let xj = point(big);
            for k in 0..big.len() {
                let small: Vec<usize> = big.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect();
                let s = index_sets[p].iter().position(|set| *set == small).expect("faces are listed");
                let xi = point(&small);
                let restrict =
                    if xi == xj { RingMatrix::identity(m.carrier(xj), m.gens(xj)) } else { m.transition(xi, xj) };
                let comps = (0..m.len())
                    .map(|y| restrict.map_ring(&rep.rep.map(xj, rep.join(xj, y))).scale(&sign(k)))
                    .collect();
                let map = DiagMorphism::new(terms[p][s].clone(), terms[p + 1][t].clone(), comps)?;
                blocks.push(Block { target: t, source: s, map });
            }
        }
        differentials.push(blocks);
    }

    let mut homotopies = Vec::new();
    for y in 0..m.len() {
        let pivot = cover.iter().position(|&c| poset.leq(c, y)).expect("checked cover");
        let mut blocks = vec![vec![Block { target: 0, source: pivot, map: through_join(m, cover[pivot], y, y)? }]];
        for q in 1..n {
            let mut level = Vec::new();
            for (s, big) in index_sets[q].iter().enumerate() {
                let Some(pos) = big.iter().position(|&c| c == pivot) else {
                    continue;
                };
                let small: Vec<usize> = big.iter().copied().filter(|&c| c != pivot).collect();
                let t = index_sets[q - 1].iter().position(|set| *set == small).expect("faces are listed");
                let (xj, xi) = (point(big), point(&small));
                let phi = through_join(m, xj, xi, rep.join(xi, y))?;
                level.push(Block { target: t, source: s, map: phi.scale(&sign(pos)) });
            }
            blocks.push(level);
        }
        homotopies.push(VertexHomotopy { vertex: y, pivot, blocks });
    }

    Ok(CechComplex {
        rep: rep.clone(),
        module: m.clone(),
        cover: cover.to_vec(),
        index_sets,
        terms,
        augmentation,
        differentials,
        homotopies,
    })
}

type Blocks = Vec<Block<RingMatrix>>;

impl CechComplex {
    /// Top degree n of the resolution.
    pub fn top(&self) -> usize {
        self.terms.len() - 1
    }

    /// Degree -1 is M itself.
    fn carrier_index(&self, p: isize, s: usize, y: usize) -> usize {
        if p < 0 {
            self.module.ring_at[y]
        } else {
            self.terms[p as usize][s].ring_at[y]
        }
    }

    fn vertex_module(&self, p: isize, s: usize, y: usize) -> &FPModule {
        if p < 0 {
            &self.module.vertices[y]
        } else {
            &self.terms[p as usize][s].vertices[y]
        }
    }

    fn summands(&self, p: isize) -> usize {
        if p < 0 {
            1
        } else {
            self.terms[p as usize].len()
        }
    }

    /// d from degree p to p + 1 at vertex y; d from -1 is the augmentation.
    fn d_at(&self, p: isize, y: usize) -> Blocks {
        if p < 0 {
            return self
                .augmentation
                .iter()
                .enumerate()
                .map(|(i, e)| Block { target: i, source: 0, map: e.components[y].clone() })
                .collect();
        }
        self.differentials
            .get(p as usize)
            .map(|level| {
                level
                    .iter()
                    .map(|b| Block { target: b.target, source: b.source, map: b.map.components[y].clone() })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// s from degree q to q - 1 at vertex y.
    fn s_at(&self, q: isize, y: usize) -> Blocks {
        if q < 0 {
            return Vec::new();
        }
        self.homotopies[y].blocks.get(q as usize).cloned().unwrap_or_default()
    }

    /// second ∘ first, where first leaves degree `mid` summands and second lands in `end`.
    fn compose(
        &self,
        first: &Blocks,
        second: &Blocks,
        mid: isize,
        end: isize,
        y: usize,
    ) -> BTreeMap<(usize, usize), RingMatrix> {
        let rep = &self.rep.rep;
        let mut out: BTreeMap<(usize, usize), RingMatrix> = BTreeMap::new();
        for a in first {
            for b in second.iter().filter(|b| b.source == a.target) {
                let along = rep.map(self.carrier_index(mid, a.target, y), self.carrier_index(end, b.target, y));
                let term = b.map.mul(&a.map.map_ring(&along));
                out.entry((b.target, a.source)).and_modify(|acc| *acc = acc.add(&term)).or_insert(term);
            }
        }
        out
    }

    fn is_square_zero(&self) -> Result<bool> {
        let top = self.top() as isize;
        for y in 0..self.module.len() {
            for p in -1..top - 1 {
                for ((t, _), map) in self.compose(&self.d_at(p, y), &self.d_at(p + 1, y), p + 1, p + 2, y) {
                    if !self.vertex_module(p + 2, t, y).is_zero_element(&map)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn contracts_at(&self, y: usize) -> Result<bool> {
        let top = self.top() as isize;
        for p in -1..=top {
            let mut total = self.compose(&self.d_at(p, y), &self.s_at(p + 1, y), p + 1, p, y);
            for (key, map) in self.compose(&self.s_at(p, y), &self.d_at(p - 1, y), p - 1, p, y) {
                total.entry(key).and_modify(|acc| *acc = acc.add(&map)).or_insert(map);
            }
            for t in 0..self.summands(p) {
                for s in 0..self.summands(p) {
                    let module = self.vertex_module(p, t, y);
                    let expected = if t == s {
                        RingMatrix::identity(module.ring.clone(), module.gens)
                    } else {
                        RingMatrix::zeros(module.ring.clone(), module.gens, self.vertex_module(p, s, y).gens)
                    };
                    let got = total.get(&(t, s)).cloned().unwrap_or_else(|| expected.sub(&expected));
                    if !module.equal_elements(&got, &expected)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn verify(&self) -> Result<ResolutionReport> {
        Ok(ResolutionReport {
            square_zero: self.is_square_zero()?,
            contracting: (0..self.module.len()).map(|y| self.contracts_at(y)).collect::<Result<Vec<_>>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::diagram::{p1_rep, p1_twist_over, FinitePoset, RingRep};
    use crate::exact_arith::RingSpec;

    fn p1() -> SemilatticeRep {
        SemilatticeRep::new(p1_rep()).unwrap()
    }

    #[test]
    fn two_chart_resolution_of_twists() {
        let rep = p1();
        for d in [-3, 0, 2] {
            let m = p1_twist_over(&rep.rep, d).unwrap();
            let c = cech_resolution(&rep, &m, &[0, 1]).unwrap();
            assert_eq!(c.terms.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 1]);
            assert!(c.verify().unwrap().holds());
        }
    }

    #[test]
    fn broken_homotopy_is_caught() {
        let rep = p1();
        let m = p1_twist_over(&rep.rep, 1).unwrap();
        let mut c = cech_resolution(&rep, &m, &[0, 1]).unwrap();
        c.homotopies[2].blocks[1][0].map = c.homotopies[2].blocks[1][0].map.neg();
        let report = c.verify().unwrap();
        assert!(report.square_zero && !report.holds());
    }

    #[test]
    fn covers_must_generate_by_joins() {
        let rep = p1();
        let m = p1_twist_over(&rep.rep, 0).unwrap();
        assert!(matches!(cech_resolution(&rep, &m, &[2]), Err(Error::CoverInvalid(_))));
        assert!(matches!(cech_resolution(&rep, &m, &[]), Err(Error::CoverInvalid(_))));
        // redundant covers are fine
        let c = cech_resolution(&rep, &m, &[0, 1, 2]).unwrap();
        assert_eq!(c.top(), 2);
        assert!(c.verify().unwrap().holds());
    }

    #[test]
    fn single_point_and_zero_module() {
        let poset = FinitePoset::new(vec!["t".into()], &[]).unwrap();
        let rep = SemilatticeRep::new(Arc::new(RingRep::new("pt", poset, vec![RingSpec::poly("x")], vec![]).unwrap()))
            .unwrap();
        let m = DiagModule::unit(rep.rep.clone()).unwrap();
        let c = cech_resolution(&rep, &m, &[0]).unwrap();
        assert!(c.augmentation[0].is_iso().unwrap());
        assert!(c.verify().unwrap().holds());
        let p1 = p1();
        let zero = DiagModule::zero(p1.rep.clone()).unwrap();
        let c = cech_resolution(&p1, &zero, &[0, 1]).unwrap();
        assert!(c.terms.iter().flatten().all(|t| t.is_zero().unwrap()));
        assert!(c.verify().unwrap().holds());
    }
}
