//! Componentwise constructions on diagram modules.

use super::module::{DiagModule, DiagMorphism};
use crate::error::{Error, Result};
use crate::exact_arith::{
    fp_cokernel, fp_image, fp_kernel, solve_linear, FPModule, PresentedMap, RingElement, RingMatrix,
};

fn require_same_carriers(f: &DiagMorphism) -> Result<()> {
    if f.source.ring_at != f.target.ring_at {
        return Err(Error::UnsupportedRing("componentwise kernels need matching carrier rings".into()));
    }
    Ok(())
}

/// Builds a submodule of `ambient` from per-vertex generating vectors, with
/// transitions obtained by expressing pushed-forward generators in the new ones.
fn submodule(ambient: &DiagModule, subs: Vec<(FPModule, PresentedMap)>) -> Result<(DiagModule, DiagMorphism)> {
    let rep = ambient.rep.clone();
    let mut given = Vec::new();
    for (i, j) in rep.poset.strict_pairs() {
        let image = ambient.push_forward(i, j, &subs[i].1.matrix);
        let system = subs[j].1.matrix.hstack(&ambient.vertices[j].relations);
        let coeffs = if image.cols() == 0 {
            RingMatrix::zeros(ambient.carrier(j), subs[j].0.gens, 0)
        } else {
            let sol = solve_linear(&system, &image)?
                .ok_or_else(|| Error::Invalid("transition leaves the submodule".into()))?;
            sol.select_rows((0..subs[j].0.gens).collect::<Vec<_>>())
        };
        given.push(((i, j), coeffs));
    }
    let vertices: Vec<FPModule> = subs.iter().map(|(m, _)| m.clone()).collect();
    let module = DiagModule::with_carriers(rep, ambient.ring_at.clone(), vertices, given)?;
    let inclusion =
        DiagMorphism::new(module.clone(), ambient.clone(), subs.into_iter().map(|(_, p)| p.matrix).collect())?;
    Ok((module, inclusion))
}

pub fn kernel(f: &DiagMorphism) -> Result<(DiagModule, DiagMorphism)> {
    require_same_carriers(f)?;
    let subs = (0..f.source.len()).map(|i| fp_kernel(&f.presented(i)?)).collect::<Result<Vec<_>>>()?;
    submodule(&f.source, subs)
}

pub fn image(f: &DiagMorphism) -> Result<(DiagModule, DiagMorphism)> {
    require_same_carriers(f)?;
    let subs = (0..f.source.len()).map(|i| fp_image(&f.presented(i)?)).collect::<Result<Vec<_>>>()?;
    submodule(&f.target, subs)
}

/// Cokernel with its projection from the target.
pub fn cokernel(f: &DiagMorphism) -> Result<(DiagModule, DiagMorphism)> {
    let target = &f.target;
    let vertices = (0..target.len()).map(|i| fp_cokernel(&f.presented(i)?)).collect::<Result<Vec<_>>>()?;
    let given = target.rep.poset.strict_pairs().into_iter().map(|(i, j)| ((i, j), target.transition(i, j))).collect();
    let module = DiagModule::with_carriers(target.rep.clone(), target.ring_at.clone(), vertices, given)?;
    let projection = DiagMorphism::new(
        target.clone(),
        module.clone(),
        (0..target.len()).map(|i| RingMatrix::identity(target.carrier(i), target.gens(i))).collect(),
    )?;
    Ok((module, projection))
}

/// Direct sum with its two injections and two projections.
pub struct DirectSum {
    pub sum: DiagModule,
    pub inj: [DiagMorphism; 2],
    pub proj: [DiagMorphism; 2],
}

pub fn direct_sum(a: &DiagModule, b: &DiagModule) -> Result<DirectSum> {
    if a.ring_at != b.ring_at || a.rep != b.rep {
        return Err(Error::TypeMismatch("direct sum needs modules over the same diagram and carriers".into()));
    }
    let rep = a.rep.clone();
    let vertices = (0..a.len()).map(|i| a.vertices[i].direct_sum(&b.vertices[i])).collect();
    let given = rep
        .poset
        .strict_pairs()
        .into_iter()
        .map(|(i, j)| ((i, j), a.transition(i, j).block_diag(&b.transition(i, j))))
        .collect();
    let sum = DiagModule::with_carriers(rep, a.ring_at.clone(), vertices, given)?;
    let n = a.len();
    // selector with ones at (offset + k, k) for k < size, optionally transposed
    let selector = |i: usize, first: bool, transpose: bool| {
        let (ga, gb) = (a.gens(i), b.gens(i));
        let (size, offset) = if first { (ga, 0) } else { (gb, ga) };
        let (rows, cols) = if transpose { (size, ga + gb) } else { (ga + gb, size) };
        RingMatrix::from_fn(a.carrier(i), rows, cols, |r, c| {
            let (big, small) = if transpose { (c, r) } else { (r, c) };
            if big == offset + small {
                RingElement::one()
            } else {
                RingElement::zero()
            }
        })
    };
    let inj_a = (0..n).map(|i| selector(i, true, false)).collect();
    let inj_b = (0..n).map(|i| selector(i, false, false)).collect();
    let proj_a = (0..n).map(|i| selector(i, true, true)).collect();
    let proj_b = (0..n).map(|i| selector(i, false, true)).collect();
    Ok(DirectSum {
        inj: [DiagMorphism::new(a.clone(), sum.clone(), inj_a)?, DiagMorphism::new(b.clone(), sum.clone(), inj_b)?],
        proj: [DiagMorphism::new(sum.clone(), a.clone(), proj_a)?, DiagMorphism::new(sum.clone(), b.clone(), proj_b)?],
        sum,
    })
}

/// Componentwise tensor product over R(i); generator (p, q) has index p * gens_N + q.
pub fn tensor(m: &DiagModule, n: &DiagModule) -> Result<DiagModule> {
    if m.ring_at != n.ring_at || m.rep != n.rep {
        return Err(Error::TypeMismatch("tensor needs modules over the same diagram and carriers".into()));
    }
    let rep = m.rep.clone();
    let vertices = (0..m.len())
        .map(|i| {
            let (a, b) = (&m.vertices[i], &n.vertices[i]);
            let ring = a.ring.clone();
            let rel = a
                .relations
                .kron(&RingMatrix::identity(ring.clone(), b.gens))
                .hstack(&RingMatrix::identity(ring.clone(), a.gens).kron(&b.relations));
            let grading = match (&a.grading, &b.grading) {
                (Some(x), Some(y)) => Some(x.iter().flat_map(|p| y.iter().map(move |q| p + q)).collect()),
                _ => None,
            };
            FPModule { ring, gens: a.gens * b.gens, relations: rel, grading }
        })
        .collect();
    let given = rep
        .poset
        .strict_pairs()
        .into_iter()
        .map(|(i, j)| ((i, j), m.transition(i, j).kron(&n.transition(i, j))))
        .collect();
    DiagModule::with_carriers(rep, m.ring_at.clone(), vertices, given)
}

/// f ⊗ g on generators.
pub fn tensor_morphisms(f: &DiagMorphism, g: &DiagMorphism) -> Result<DiagMorphism> {
    let source = tensor(&f.source, &g.source)?;
    let target = tensor(&f.target, &g.target)?;
    let comps = f.components.iter().zip(&g.components).map(|(a, b)| a.kron(b)).collect();
    DiagMorphism::new(source, target, comps)
}
