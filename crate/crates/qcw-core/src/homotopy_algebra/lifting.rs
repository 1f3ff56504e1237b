//! Lifting problems. For f: A -> B and g: X -> Y a square is a pair (u, v)
//! with g u = v f; a filler is h: B -> X with h f = u and g h = v.

use super::quiver::{hom_basis, Mor, Rep};
use crate::error::{Error, Result};
use crate::exact_arith::{QMat, Rational};

/// Solves Σ c_k images[k] = rhs, returning the coefficients.
pub(crate) fn solve_in_span(images: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    if images.is_empty() {
        return rhs.iter().all(|x| *x == Rational::from_integer(0.into())).then(Vec::new);
    }
    let a = QMat::from_columns(rhs.len(), images);
    let b = QMat::from_columns(rhs.len(), &[rhs.to_vec()]);
    a.solve(&b).map(|x| x.column(0))
}

pub(crate) fn combine(source: &Rep, target: &Rep, basis: &[Mor], coeffs: &[Rational]) -> Mor {
    basis.iter().zip(coeffs).fold(Mor::zero(source, target), |acc, (f, c)| acc.add(&f.scale(c)))
}

/// A morphism h: source -> target with `constraint(h) = rhs`, where
/// `constraint` is linear and returns the concatenated coordinate vector.
pub(crate) fn solve_for_morphism(
    source: &Rep,
    target: &Rep,
    rhs: &[Rational],
    constraint: impl Fn(&Mor) -> Vec<Rational>,
) -> Option<Mor> {
    let basis = hom_basis(source, target);
    let images: Vec<Vec<Rational>> = basis.iter().map(&constraint).collect();
    solve_in_span(&images, rhs).map(|c| combine(source, target, &basis, &c))
}

/// φ with φ then `epi` equal to `map`; exists whenever the source of `map` is projective.
pub fn lift_through_epi(epi: &Mor, map: &Mor) -> Option<Mor> {
    solve_for_morphism(&map.source, &epi.source, &map.to_vec(), |phi| phi.then(epi).to_vec())
}

/// ψ with `mono` then ψ equal to `map`; exists whenever the target of `map` is injective.
pub fn extend_along_mono(mono: &Mor, map: &Mor) -> Option<Mor> {
    solve_for_morphism(&mono.target, &map.target, &map.to_vec(), |psi| mono.then(psi).to_vec())
}

pub fn is_commutative(f: &Mor, g: &Mor, u: &Mor, v: &Mor) -> bool {
    u.then(g) == f.then(v)
}

/// A diagonal filler for the square (u, v), or `None` if the linear system is inconsistent.
pub fn lifting(f: &Mor, g: &Mor, u: &Mor, v: &Mor) -> Result<Option<Mor>> {
    if u.source != f.source || u.target != g.source || v.source != f.target || v.target != g.target {
        return Err(Error::TypeMismatch("square corners do not match".into()));
    }
    if !is_commutative(f, g, u, v) {
        return Err(Error::SquareNotCommutative);
    }
    let rhs: Vec<Rational> = u.to_vec().into_iter().chain(v.to_vec()).collect();
    Ok(solve_for_morphism(&f.target, &g.source, &rhs, |h| {
        f.then(h).to_vec().into_iter().chain(h.then(g).to_vec()).collect()
    }))
}

/// Squares and their liftable part, all as coordinate vectors (u ++ v).
pub struct SquareSpace {
    pub squares: Vec<(Mor, Mor)>,
    /// Indices into `squares` of a complement of the liftable subspace.
    pub obstructions: Vec<usize>,
}

impl SquareSpace {
    pub fn has_lifting(&self) -> bool {
        self.obstructions.is_empty()
    }
}

/// A basis of all commutative squares from f to g, and a choice of squares
/// spanning the non-liftable quotient.
pub fn square_space(f: &Mor, g: &Mor) -> SquareSpace {
    let us = hom_basis(&f.source, &g.source);
    let vs = hom_basis(&f.target, &g.target);
    let len: usize = f.source.dims.iter().zip(&g.target.dims).map(|(a, b)| a * b).sum();
    // g u − v f = 0 on coefficients (a, b)
    let mut cols: Vec<Vec<Rational>> = us.iter().map(|u| u.then(g).to_vec()).collect();
    cols.extend(vs.iter().map(|v| f.then(v).scale(&Rational::from_integer((-1).into())).to_vec()));
    let kernel = QMat::from_columns(len, &cols).nullspace();
    let squares: Vec<(Mor, Mor)> = (0..kernel.cols())
        .map(|k| {
            let c = kernel.column(k);
            (combine(&f.source, &g.source, &us, &c[..us.len()]), combine(&f.target, &g.target, &vs, &c[us.len()..]))
        })
        .collect();
    let as_vec = |u: &Mor, v: &Mor| -> Vec<Rational> { u.to_vec().into_iter().chain(v.to_vec()).collect() };
    let dim = f.source.dims.iter().zip(&g.source.dims).map(|(a, b)| a * b).sum::<usize>()
        + f.target.dims.iter().zip(&g.target.dims).map(|(a, b)| a * b).sum::<usize>();
    let liftable: Vec<Vec<Rational>> =
        hom_basis(&f.target, &g.source).iter().map(|h| as_vec(&f.then(h), &h.then(g))).collect();
    let mut all = liftable.clone();
    all.extend(squares.iter().map(|(u, v)| as_vec(u, v)));
    let (_, pivots) = QMat::from_columns(dim, &all).rref();
    let obstructions = pivots.into_iter().filter(|&p| p >= liftable.len()).map(|p| p - liftable.len()).collect();
    SquareSpace { squares, obstructions }
}

/// Whether g has the right lifting property against f; on failure returns a square without filler.
pub fn rlp_witness(f: &Mor, g: &Mor) -> Option<(Mor, Mor)> {
    let space = square_space(f, g);
    space.obstructions.first().map(|&k| space.squares[k].clone())
}

pub fn has_rlp(f: &Mor, g: &Mor) -> bool {
    square_space(f, g).has_lifting()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::diagram::FinitePoset;
    use crate::homotopy_algebra::ext::{ext1_classes, presentation};
    use crate::homotopy_algebra::quiver::BoundQuiver;

    #[test]
    fn ext_witness_deflation_has_no_section() {
        let q = Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(2)));
        let s0 = Rep::simple(&q, 0);
        let s1 = Rep::simple(&q, 1);
        let conf = &ext1_classes(&s0, &s1)[0];
        let zero = Rep::zero(&q);
        let f = Mor::zero(&zero, &s0);
        let g = conf.deflation.clone();
        let u = Mor::zero(&zero, conf.middle());
        let v = Mor::identity(&s0);
        assert_eq!(lifting(&f, &g, &u, &v).unwrap(), None);
        assert!(!has_rlp(&f, &g));
        assert!(rlp_witness(&f, &g).is_some());
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let q = Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(2)));
        let s0 = Rep::simple(&q, 0);
        let id = Mor::identity(&s0);
        let zero = Mor::zero(&s0, &s0);
        assert!(matches!(lifting(&id, &id, &id, &zero), Err(Error::SquareNotCommutative)));
    }

    #[test]
    fn projective_presentation_lifts_against_split_epis() {
        let q = Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(3)));
        let x = Rep::simple(&q, 1);
        let pres = presentation(&x);
        // g: X ⊕ X -> X is split, so every square has a filler
        let (_, _, p1, _) = super::super::quiver::sum_maps(&x, &x);
        assert!(has_rlp(&pres.inflation, &p1));
    }
}
