//! Complexes of poset representations over Q as representations of the
//! quiver of complexes, supported in a fixed degree window.

use std::sync::Arc;

use crate::diagram::FinitePoset;
use crate::error::{Error, Result};
use crate::exact_arith::{QMat, Rational};
use crate::homotopy_algebra::quiver::{factor_through_epi, factor_through_mono};
use crate::homotopy_algebra::{cokernel, image, kernel, BoundQuiver, ComplexLayout, Mor, ObjectClass, Rep};

/// The abelian category of complexes of representations of `poset`
/// concentrated in degrees lo..=hi.
#[derive(Clone, Debug)]
pub struct ComplexCategory {
    pub base: Arc<BoundQuiver>,
    pub quiver: Arc<BoundQuiver>,
}

impl PartialEq for ComplexCategory {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
    }
}

impl ComplexCategory {
    pub fn new(poset: &FinitePoset, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("empty degree window {lo}..{hi}")));
        }
        Ok(Self {
            base: Arc::new(BoundQuiver::from_poset(poset)),
            quiver: Arc::new(BoundQuiver::complexes(poset, lo, hi)),
        })
    }

    pub fn layout(&self) -> &ComplexLayout {
        self.quiver.layout.as_ref().expect("complex quivers carry a layout")
    }

    pub fn lo(&self) -> i64 {
        self.layout().lo
    }

    pub fn hi(&self) -> i64 {
        self.layout().hi
    }

    pub fn in_window(&self, n: i64) -> bool {
        (self.lo()..=self.hi()).contains(&n)
    }

    pub fn zero(&self) -> Rep {
        Rep::zero(&self.quiver)
    }

    /// The degree-n component as a representation of the poset.
    pub fn component(&self, x: &Rep, n: i64) -> Rep {
        if !self.in_window(n) {
            return Rep::zero(&self.base);
        }
        let l = self.layout();
        let dims = (0..self.base.len()).map(|v| x.dims[l.vertex(v, n)]).collect();
        let maps = (0..self.base.arrows.len()).map(|k| x.maps[l.hasse_arrow(k, n)].clone()).collect();
        Rep { quiver: self.base.clone(), dims, maps }
    }

    /// The differential X^n -> X^{n+1}.
    pub fn differential(&self, x: &Rep, n: i64) -> Mor {
        let (src, tgt) = (self.component(x, n), self.component(x, n + 1));
        if !self.in_window(n) || !self.in_window(n + 1) {
            return Mor::zero(&src, &tgt);
        }
        let l = self.layout();
        let comps = (0..self.base.len()).map(|v| x.maps[l.d_arrow(v, n)].clone()).collect();
        Mor { source: src, target: tgt, comps }
    }

    /// Assembles a complex from components indexed from `lo` and differentials between them.
    pub fn assemble(&self, lo: i64, components: &[Rep], differentials: &[Mor]) -> Result<Rep> {
        let l = self.layout();
        let degree_of = |k: usize| lo + k as i64;
        for (k, c) in components.iter().enumerate() {
            if !c.is_zero() && !self.in_window(degree_of(k)) {
                return Err(Error::Invalid(format!("component in degree {} lies outside the window", degree_of(k))));
            }
        }
        let comp = |n: i64| -> Rep {
            let k = n - lo;
            if k >= 0 && (k as usize) < components.len() {
                components[k as usize].clone()
            } else {
                Rep::zero(&self.base)
            }
        };
        let mut dims = vec![0; self.quiver.len()];
        let mut maps: Vec<QMat> = self.quiver.arrows.iter().map(|_| QMat::zeros(0, 0)).collect();
        for n in l.degrees() {
            let c = comp(n);
            for v in 0..self.base.len() {
                dims[l.vertex(v, n)] = c.dims[v];
            }
            for k in 0..self.base.arrows.len() {
                maps[l.hasse_arrow(k, n)] = c.maps[k].clone();
            }
        }
        for n in l.lo..l.hi {
            let k = n - lo;
            let d = if k >= 0 && (k as usize) < differentials.len() {
                differentials[k as usize].clone()
            } else {
                Mor::zero(&comp(n), &comp(n + 1))
            };
            for v in 0..self.base.len() {
                maps[l.d_arrow(v, n)] = d.comps[v].clone();
            }
        }
        Rep::new(self.quiver.clone(), dims, maps)
    }

    /// The degree-n component of a chain map.
    pub fn component_map(&self, f: &Mor, n: i64) -> Mor {
        let (src, tgt) = (self.component(&f.source, n), self.component(&f.target, n));
        if !self.in_window(n) {
            return Mor::zero(&src, &tgt);
        }
        let l = self.layout();
        let comps = (0..self.base.len()).map(|v| f.comps[l.vertex(v, n)].clone()).collect();
        Mor { source: src, target: tgt, comps }
    }

    /// A chain map from its components (indexed by degree over the window).
    pub fn assemble_map(&self, source: &Rep, target: &Rep, components: impl Fn(i64) -> Mor) -> Result<Mor> {
        let l = self.layout();
        let mut comps = vec![QMat::zeros(0, 0); self.quiver.len()];
        for n in l.degrees() {
            let c = components(n);
            for v in 0..self.base.len() {
                comps[l.vertex(v, n)] = c.comps[v].clone();
            }
        }
        Mor::new(source.clone(), target.clone(), comps)
    }

    /// D^n(M): M in degrees n and n+1 joined by the identity.
    pub fn disc(&self, m: &Rep, n: i64) -> Result<Rep> {
        self.assemble(n, &[m.clone(), m.clone()], &[Mor::identity(m)])
    }

    /// S^n(M): M in degree n.
    pub fn sphere(&self, m: &Rep, n: i64) -> Result<Rep> {
        self.assemble(n, std::slice::from_ref(m), &[])
    }

    /// Z^n, the cycles in degree n, with the inclusion into X^n.
    pub fn cycles(&self, x: &Rep, n: i64) -> (Rep, Mor) {
        kernel(&self.differential(x, n))
    }

    pub fn boundaries(&self, x: &Rep, n: i64) -> (Rep, Mor) {
        image(&self.differential(x, n - 1))
    }

    /// H^n as a representation of the poset.
    pub fn cohomology(&self, x: &Rep, n: i64) -> Rep {
        self.cohomology_projection(x, n).1.target
    }

    /// Z^n -> H^n together with the inclusion Z^n -> X^n.
    fn cohomology_projection(&self, x: &Rep, n: i64) -> (Mor, Mor) {
        let (_, z_inc) = self.cycles(x, n);
        let (_, b_inc) = self.boundaries(x, n);
        let into_cycles = factor_through_mono(&z_inc, &b_inc).expect("boundaries are cycles");
        (z_inc, cokernel(&into_cycles).1)
    }

    /// H^n(f): H^n(X) -> H^n(Y).
    pub fn cohomology_map(&self, f: &Mor, n: i64) -> Mor {
        let (ix, px) = self.cohomology_projection(&f.source, n);
        let (iy, py) = self.cohomology_projection(&f.target, n);
        let on_cycles =
            factor_through_mono(&iy, &ix.then(&self.component_map(f, n))).expect("chain maps preserve cycles");
        factor_through_epi(&px, &on_cycles.then(&py)).expect("chain maps preserve boundaries")
    }

    pub fn is_quasi_isomorphism(&self, f: &Mor) -> bool {
        self.layout().degrees().all(|n| self.cohomology_map(f, n).is_iso())
    }

    pub fn cohomology_dims(&self, x: &Rep) -> Vec<(i64, Vec<usize>)> {
        self.layout().degrees().map(|n| (n, self.cohomology(x, n).dims)).collect()
    }

    pub fn is_acyclic(&self, x: &Rep) -> bool {
        self.layout().degrees().all(|n| {
            let rank_in = self.differential(x, n - 1).comps.iter().map(QMat::rank).sum::<usize>();
            let rank_out = self.differential(x, n).comps.iter().map(QMat::rank).sum::<usize>();
            self.component(x, n).total_dim() == rank_in + rank_out
        })
    }

    /// Acyclic with every component and cycle object in the class.
    pub fn is_in_tilde(&self, class: &ObjectClass, x: &Rep) -> bool {
        self.is_acyclic(x)
            && self
                .layout()
                .degrees()
                .all(|n| class.contains(&self.component(x, n)) && class.contains(&self.cycles(x, n).0))
    }

    /// X[k]: (X[k])^n = X^{n+k} with differential scaled by (−1)^k.
    pub fn shift(&self, x: &Rep, k: i64) -> Result<Rep> {
        let l = self.layout();
        if l.degrees().any(|m| !self.in_window(m - k) && !self.component(x, m).is_zero()) {
            return Err(Error::Invalid(format!("shift by {k} leaves the degree window")));
        }
        let sign = Rational::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 }.into());
        let comps: Vec<Rep> = l.degrees().map(|n| self.component(x, n + k)).collect();
        let diffs: Vec<Mor> = l.degrees().map(|n| self.differential(x, n + k).scale(&sign)).collect();
        self.assemble(l.lo, &comps, &diffs)
    }

    /// cone(f)^n = X^{n+1} ⊕ Y^n with differential [[−d_X, 0], [f, d_Y]].
    pub fn cone(&self, f: &Mor) -> Result<Rep> {
        let l = self.layout();
        let (x, y) = (&f.source, &f.target);
        if !self.component(x, l.lo).is_zero() {
            return Err(Error::Invalid("the cone needs one free degree below the source".into()));
        }
        let comps: Vec<Rep> = l.degrees().map(|n| self.component(x, n + 1).direct_sum(&self.component(y, n))).collect();
        let minus = -Rational::from_integer(1.into());
        let diffs: Vec<Mor> = l
            .degrees()
            .map(|n| {
                let top = self.differential(x, n + 1).scale(&minus).vjoin(&self.component_map(f, n + 1));
                let bottom =
                    Mor::zero(&self.component(y, n), &self.component(x, n + 2)).vjoin(&self.differential(y, n));
                top.hjoin(&bottom)
            })
            .collect();
        self.assemble(l.lo, &comps, &diffs)
    }

    /// Whether all components in degrees outside lo..=hi vanish.
    pub fn supported_in(&self, x: &Rep, lo: i64, hi: i64) -> bool {
        self.layout().degrees().filter(|n| *n < lo || *n > hi).all(|n| self.component(x, n).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy_algebra::is_isomorphic;

    fn cat() -> ComplexCategory {
        ComplexCategory::new(&FinitePoset::chain(2), -1, 2).unwrap()
    }

    #[test]
    fn discs_and_spheres() {
        let c = cat();
        let s0 = Rep::simple(&c.base, 0);
        let d = c.disc(&s0, 0).unwrap();
        assert!(c.is_acyclic(&d));
        let s = c.sphere(&s0, 1).unwrap();
        assert!(!c.is_acyclic(&s));
        assert_eq!(c.cohomology(&s, 1).dims, vec![1, 0]);
        assert!(c.cohomology(&s, 0).is_zero());
        let p0 = Rep::projective(&c.base, 0);
        let dp = c.disc(&p0, 0).unwrap();
        assert!(c.is_in_tilde(&ObjectClass::projectives(), &dp));
        assert!(c.disc(&Rep::zero(&c.base), 0).unwrap().is_zero());
    }

    #[test]
    fn disc_is_a_projective_vertex() {
        let c = cat();
        let p = Rep::projective(&c.quiver, c.layout().vertex(0, 0));
        let d = c.disc(&Rep::projective(&c.base, 0), 0).unwrap();
        assert!(is_isomorphic(&p, &d));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = cat();
        let s1 = c.sphere(&Rep::simple(&c.base, 1), 0).unwrap();
        let cone = c.cone(&Mor::identity(&s1)).unwrap();
        assert!(c.is_acyclic(&cone));
        let x = c.sphere(&Rep::projective(&c.base, 0), 1).unwrap();
        let cone0 = c.cone(&Mor::zero(&c.zero(), &x)).unwrap();
        assert!(is_isomorphic(&cone0, &x));
    }

    #[test]
    fn splice_of_a_conflation_is_exact() {
        let c = cat();
        let q = &c.base;
        let (s0, s1, p0) = (Rep::simple(q, 0), Rep::simple(q, 1), Rep::projective(q, 0));
        let conf = crate::homotopy_algebra::ext1_classes(&s0, &s1).remove(0);
        let x = c.assemble(0, &[s1, conf.middle().clone(), s0], &[conf.inflation.clone(), conf.deflation.clone()]);
        let x = x.unwrap();
        assert!(c.is_acyclic(&x));
        assert!(is_isomorphic(&c.component(&x, 1), &p0));
        let shifted = c.shift(&x, 1).unwrap();
        assert!(c.is_acyclic(&shifted));
        assert_eq!(c.component(&shifted, -1).dims, vec![0, 1]);
    }
}
