//! Internal hom of diagram modules and the hom complex.
//!
//! Over a constant field diagram ℋom(M, N)(i) = Hom(M|≥i, N|≥i) with
//! restriction as transition. For modules that are free at every vertex with
//! invertible transitions (vector bundles such as the twists on P¹) it is the
//! vertexwise hom with transition ψ ↦ N^i_j ∘ ψ ∘ (M^i_j)⁻¹.

use std::sync::Arc;

use super::bounded::{BoundedComplex, Summed};
use crate::diagram::{field_module, qmat_to_ring, DiagModule, DiagMorphism};
use crate::error::{Error, Result};
use crate::exact_arith::{FPModule, QMat, Rational, RingElement, RingMatrix};
use crate::homotopy_algebra::lifting::solve_in_span;
use crate::homotopy_algebra::{hom_basis, BoundQuiver, Mor, Rep};

/// ℋom(M, N) together with the data needed to act on it by composition.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub source: DiagModule,
    pub target: DiagModule,
    pub module: DiagModule,
    backend: Backend,
}

#[derive(Clone, Debug)]
enum Backend {
    /// Per vertex, a basis of Hom(M|≥i, N|≥i) as morphisms of zero-extended representations.
    Field { quiver: Arc<BoundQuiver>, bases: Vec<Vec<Mor>> },
    /// Row-major coordinates of generator matrices.
    Bundle,
}

/// The representation agreeing with x on the up-set of i and zero elsewhere.
fn restrict_up(x: &Rep, i: usize) -> Rep {
    let poset = x.quiver.poset.as_ref().expect("poset quiver");
    let keep: Vec<bool> = (0..x.dims.len()).map(|v| poset.leq(i, v)).collect();
    let dims: Vec<usize> = x.dims.iter().zip(&keep).map(|(&d, &k)| if k { d } else { 0 }).collect();
    let maps = x
        .quiver
        .arrows
        .iter()
        .zip(&x.maps)
        .map(|(&(s, t), m)| if keep[s] && keep[t] { m.clone() } else { QMat::zeros(dims[t], dims[s]) })
        .collect();
    Rep { quiver: x.quiver.clone(), dims, maps }
}

fn restrict_mor(f: &Mor, i: usize) -> Mor {
    let (s, t) = (restrict_up(&f.source, i), restrict_up(&f.target, i));
    let poset = f.source.quiver.poset.as_ref().expect("poset quiver");
    let comps =
        (0..f.comps.len()).map(|v| if poset.leq(i, v) { f.comps[v].clone() } else { QMat::zeros(0, 0) }).collect();
    Mor { source: s, target: t, comps }
}

fn coordinates(basis: &[Mor], x: &Mor) -> Vec<Rational> {
    let images: Vec<Vec<Rational>> = basis.iter().map(Mor::to_vec).collect();
    solve_in_span(&images, &x.to_vec()).expect("element lies in the hom space")
}

fn is_bundle(m: &DiagModule) -> bool {
    m.vertices.iter().all(|v| v.relations.cols() == 0)
}

pub fn internal_hom(m: &DiagModule, n: &DiagModule) -> Result<InternalHom> {
    if m.rep != n.rep || m.ring_at != n.ring_at {
        return Err(Error::TypeMismatch("internal hom needs modules over the same diagram".into()));
    }
    if m.rep.is_field_constant() {
        field_hom(m, n)
    } else if is_bundle(m) && is_bundle(n) {
        bundle_hom(m, n)
    } else {
        Err(Error::UnsupportedRing("internal hom is available over field diagrams and for vector bundles".into()))
    }
}

fn field_hom(m: &DiagModule, n: &DiagModule) -> Result<InternalHom> {
    let quiver = Arc::new(BoundQuiver::from_poset(&m.rep.poset));
    let (x, y) = (Rep::from_diag(&quiver, m)?, Rep::from_diag(&quiver, n)?);
    let bases: Vec<Vec<Mor>> = (0..quiver.len()).map(|i| hom_basis(&restrict_up(&x, i), &restrict_up(&y, i))).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let covers = m
        .rep
        .poset
        .covers()
        .into_iter()
        .map(|(i, j)| {
            let cols: Vec<Vec<Rational>> =
                bases[i].iter().map(|phi| coordinates(&bases[j], &restrict_mor(phi, j))).collect();
            ((i, j), QMat::from_columns(dims[j], &cols))
        })
        .collect::<Vec<_>>();
    let module = field_module(&m.rep, &dims, &covers)?;
    Ok(InternalHom { source: m.clone(), target: n.clone(), module, backend: Backend::Field { quiver, bases } })
}

fn bundle_hom(m: &DiagModule, n: &DiagModule) -> Result<InternalHom> {
    let rep = &m.rep;
    let vertices = (0..m.len())
        .map(|i| {
            let (a, b) = (m.gens(i), n.gens(i));
            let free = FPModule::free(m.carrier(i), a * b);
            match (&m.vertices[i].grading, &n.vertices[i].grading) {
                (Some(dm), Some(dn)) => {
                    free.with_grading(dn.iter().flat_map(|q| dm.iter().map(move |p| q - p)).collect())
                }
                _ => Ok(free),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let given = rep
        .poset
        .strict_pairs()
        .into_iter()
        .map(|(i, j)| {
            let inv = m.transition(i, j).unit_inverse().ok_or_else(|| {
                Error::UnsupportedRing(format!("transition {i} -> {j} of the source is not invertible"))
            })?;
            Ok(((i, j), n.transition(i, j).kron(&inv.transpose())))
        })
        .collect::<Result<Vec<_>>>()?;
    let module = DiagModule::with_carriers(rep.clone(), m.ring_at.clone(), vertices, given)?;
    Ok(InternalHom { source: m.clone(), target: n.clone(), module, backend: Backend::Bundle })
}

fn field_matrix(rows: usize, cols: &[Vec<Rational>]) -> RingMatrix {
    qmat_to_ring(&QMat::from_columns(rows, cols))
}

/// ℋom(M, g): ℋom(M, N) -> ℋom(M, N') for g: N -> N'.
pub fn post_compose(from: &InternalHom, to: &InternalHom, g: &DiagMorphism) -> Result<DiagMorphism> {
    let comps = match (&from.backend, &to.backend) {
        (Backend::Field { quiver, bases }, Backend::Field { bases: to_bases, .. }) => {
            let g = Mor::from_diag(quiver, g)?;
            (0..bases.len())
                .map(|i| {
                    let gi = restrict_mor(&g, i);
                    let cols: Vec<Vec<Rational>> =
                        bases[i].iter().map(|phi| coordinates(&to_bases[i], &phi.then(&gi))).collect();
                    field_matrix(to_bases[i].len(), &cols)
                })
                .collect()
        }
        (Backend::Bundle, Backend::Bundle) => (0..g.components.len())
            .map(|i| g.components[i].kron(&RingMatrix::identity(from.source.carrier(i), from.source.gens(i))))
            .collect(),
        _ => return Err(Error::TypeMismatch("internal homs over different backends".into())),
    };
    DiagMorphism::new(from.module.clone(), to.module.clone(), comps)
}

/// ℋom(f, N): ℋom(M, N) -> ℋom(M', N) for f: M' -> M.
pub fn pre_compose(from: &InternalHom, to: &InternalHom, f: &DiagMorphism) -> Result<DiagMorphism> {
    let comps = match (&from.backend, &to.backend) {
        (Backend::Field { quiver, bases }, Backend::Field { bases: to_bases, .. }) => {
            let f = Mor::from_diag(quiver, f)?;
            (0..bases.len())
                .map(|i| {
                    let fi = restrict_mor(&f, i);
                    let cols: Vec<Vec<Rational>> =
                        bases[i].iter().map(|phi| coordinates(&to_bases[i], &fi.then(phi))).collect();
                    field_matrix(to_bases[i].len(), &cols)
                })
                .collect()
        }
        (Backend::Bundle, Backend::Bundle) => (0..f.components.len())
            .map(|i| {
                RingMatrix::identity(from.target.carrier(i), from.target.gens(i)).kron(&f.components[i].transpose())
            })
            .collect(),
        _ => return Err(Error::TypeMismatch("internal homs over different backends".into())),
    };
    DiagMorphism::new(from.module.clone(), to.module.clone(), comps)
}

fn sign(n: i64) -> RingElement {
    if n.rem_euclid(2) == 0 {
        RingElement::one()
    } else {
        RingElement::int(-1)
    }
}

/// ℋom(Y, Z)^n = ⊕_i ℋom(Y^i, Z^{i+n}) with d f = ∂_Z f − (−1)^n f ∂_Y.
pub fn hom_complexes(y: &BoundedComplex, z: &BoundedComplex) -> Result<BoundedComplex> {
    if y.components.is_empty() || z.components.is_empty() {
        return Ok(BoundedComplex::zero(&y.rep));
    }
    let (lo, hi) = (z.lo - y.hi(), z.hi() - y.lo);
    let terms = |n: i64| -> Vec<i64> { y.degrees().filter(|i| z.degrees().contains(&(i + n))).collect() };
    let homs = (lo..=hi)
        .map(|n| terms(n).into_iter().map(|i| internal_hom(&y.component(i), &z.component(i + n))).collect())
        .collect::<Result<Vec<Vec<InternalHom>>>>()?;
    let sums = homs
        .iter()
        .map(|hs| Summed::new(&y.rep, hs.iter().map(|h| h.module.clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    let mut differentials = Vec::new();
    for n in lo..hi {
        let k = (n - lo) as usize;
        let (src_terms, tgt_terms) = (terms(n), terms(n + 1));
        let mut blocks = Vec::new();
        for (s, &i) in src_terms.iter().enumerate() {
            let from = &homs[k][s];
            if let Some(t) = tgt_terms.iter().position(|&p| p == i) {
                blocks.push(((t, s), post_compose(from, &homs[k + 1][t], &z.differential(i + n))?));
            }
            if let Some(t) = tgt_terms.iter().position(|&p| p == i - 1) {
                let pre = pre_compose(from, &homs[k + 1][t], &y.differential(i - 1))?;
                blocks.push(((t, s), pre.scale(&sign(n).neg())));
            }
        }
        differentials.push(sums[k].block_map(&sums[k + 1], &blocks)?);
    }
    let components = sums.into_iter().map(|s| s.module).collect();
    BoundedComplex::new(y.rep.clone(), lo, components, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{ComplexCategory, ComplexMorphism};
    use crate::diagram::{chain_rep, p1_rep, p1_twist_over, projective_generator, simple, FinitePoset};
    use crate::homotopy_algebra::hom_dim;

    #[test]
    fn field_internal_hom_restricts_to_up_sets() {
        let rep = chain_rep(2);
        let (s0, p0) = (simple(&rep, 0), projective_generator(&rep, 0));
        // ℋom(P0, S0): at 0 Hom(P0, S0) = k, at 1 Hom(k, 0) = 0
        let h = internal_hom(&p0, &s0).unwrap();
        assert_eq!(h.module.vertices.iter().map(|v| v.gens).collect::<Vec<_>>(), vec![1, 0]);
        let h = internal_hom(&p0, &p0).unwrap();
        assert_eq!(h.module.vertices.iter().map(|v| v.gens).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn twist_hom_is_a_twist() {
        let rep = p1_rep();
        let h = internal_hom(&p1_twist_over(&rep, 1).unwrap(), &p1_twist_over(&rep, 3).unwrap()).unwrap();
        assert_eq!(h.module.transition(1, 2), p1_twist_over(&rep, 2).unwrap().transition(1, 2));
        assert!(h.module.validate().is_clean());
    }

    #[test]
    fn hom_tensor_adjunction_dimensions() {
        let rep = chain_rep(2);
        let cat = ComplexCategory::new(&FinitePoset::chain(2), -3, 3).unwrap();
        let (s0, s1, p0) = (simple(&rep, 0), simple(&rep, 1), projective_generator(&rep, 0));
        let x = BoundedComplex::disc(&p0, 0);
        let y = BoundedComplex::sphere(&s1, 0);
        let z = BoundedComplex::disc(&s0, -1);
        let lhs = hom_dim(&x.tensor(&y).unwrap().to_rep(&cat).unwrap(), &z.to_rep(&cat).unwrap());
        let hyz = hom_complexes(&y, &z).unwrap();
        assert_eq!(hyz.first_nonzero_square().unwrap(), None);
        let rhs = hom_dim(&x.to_rep(&cat).unwrap(), &hyz.to_rep(&cat).unwrap());
        assert_eq!(lhs, rhs);
        let _ = ComplexMorphism::identity(&hyz);
    }
}
