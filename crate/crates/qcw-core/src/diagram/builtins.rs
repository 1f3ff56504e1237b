//! Standard diagrams and modules.

use std::sync::Arc;

use super::module::DiagModule;
use super::poset::FinitePoset;
use super::ringrep::RingRep;
use crate::error::Result;
use crate::exact_arith::{FPModule, QMat, RingElement, RingMatrix, RingSpec};

pub fn chain_rep(n: usize) -> Arc<RingRep> {
    Arc::new(RingRep::constant_field(&format!("A{n}"), FinitePoset::chain(n)))
}

pub fn p1_rep() -> Arc<RingRep> {
    Arc::new(RingRep::p1())
}

pub fn p2_ringrep() -> RingRep {
    RingRep::p2()
}

/// P_i: R(j) for j >= i and 0 elsewhere, transitions given by the ring maps.
pub fn projective_generator(rep: &Arc<RingRep>, i: usize) -> DiagModule {
    let poset = &rep.poset;
    let vertices = (0..rep.len())
        .map(|j| {
            if poset.leq(i, j) {
                FPModule::free(rep.rings[j].clone(), 1)
            } else {
                FPModule::zero(rep.rings[j].clone())
            }
        })
        .collect::<Vec<_>>();
    let given = poset
        .covers()
        .into_iter()
        .map(|(a, b)| {
            let t = if poset.leq(i, a) {
                RingMatrix::identity(rep.rings[b].clone(), 1)
            } else {
                RingMatrix::zeros(rep.rings[b].clone(), vertices[b].gens, 0)
            };
            ((a, b), t)
        })
        .collect();
    DiagModule::new(rep.clone(), vertices, given).expect("projective generators are valid")
}

/// A module over a constant field diagram from dimensions and cover matrices.
pub fn field_module(rep: &Arc<RingRep>, dims: &[usize], covers: &[((usize, usize), QMat)]) -> Result<DiagModule> {
    let vertices = dims.iter().map(|&d| FPModule::free(RingSpec::Field, d)).collect();
    let given = covers.iter().map(|(edge, m)| (*edge, qmat_to_ring(m))).collect();
    DiagModule::new(rep.clone(), vertices, given)
}

/// The simple module at vertex i of a constant field diagram.
pub fn simple(rep: &Arc<RingRep>, i: usize) -> DiagModule {
    let dims: Vec<usize> = (0..rep.len()).map(|j| usize::from(j == i)).collect();
    let covers: Vec<_> = rep.poset.covers().into_iter().map(|(a, b)| ((a, b), QMat::zeros(dims[b], dims[a]))).collect();
    field_module(rep, &dims, &covers).expect("simple modules are valid")
}

pub fn qmat_to_ring(m: &QMat) -> RingMatrix {
    RingMatrix::from_fn(RingSpec::Field, m.rows(), m.cols(), |i, j| RingElement::constant(m.get(i, j).clone()))
}

/// Coefficients of a matrix over the field.
pub fn ring_to_qmat(m: &RingMatrix) -> QMat {
    QMat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).coeff(0))
}

/// The twist O(n) on the P1 diagram: rank one everywhere with transition
/// x^n from the u1 chart. Graded with generators in degrees 0, n, 0.
pub fn p1_twist(n: i64) -> Result<DiagModule> {
    p1_twist_over(&p1_rep(), n)
}

pub fn p1_twist_over(rep: &Arc<RingRep>, n: i64) -> Result<DiagModule> {
    let vertices = vec![
        FPModule::free(rep.rings[0].clone(), 1).with_grading(vec![0])?,
        FPModule::free(rep.rings[1].clone(), 1).with_grading(vec![n])?,
        FPModule::free(rep.rings[2].clone(), 1).with_grading(vec![0])?,
    ];
    let laurent = rep.rings[2].clone();
    let given = vec![
        ((0, 2), RingMatrix::identity(laurent.clone(), 1)),
        ((1, 2), RingMatrix::from_rows(laurent, vec![vec![RingElement::x_pow(n)]])),
    ];
    DiagModule::new(rep.clone(), vertices, given)
}
