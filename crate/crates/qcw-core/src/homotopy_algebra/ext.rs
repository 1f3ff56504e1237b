//! Ext groups via projective presentations, with extensions materialized as
//! conflations.

use super::quiver::{cokernel, factor_through_epi, hom_basis, hom_dim, projective_sum, pushout, Mor, Rep};
use crate::exact_arith::{QMat, Rational};

/// A short exact sequence 0 -> X -> Y -> Z -> 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflation {
    pub inflation: Mor,
    pub deflation: Mor,
}

impl Conflation {
    pub fn new(inflation: Mor, deflation: Mor) -> Self {
        Self { inflation, deflation }
    }

    pub fn left(&self) -> &Rep {
        &self.inflation.source
    }

    pub fn middle(&self) -> &Rep {
        &self.inflation.target
    }

    pub fn right(&self) -> &Rep {
        &self.deflation.target
    }

    /// Exactness at every vertex by rank counting.
    pub fn is_exact(&self) -> bool {
        self.inflation.is_valid()
            && self.deflation.is_valid()
            && self.inflation.target == self.deflation.source
            && self.inflation.is_mono()
            && self.deflation.is_epi()
            && self.inflation.then(&self.deflation).is_zero()
            && self
                .middle()
                .dims
                .iter()
                .zip(self.left().dims.iter().zip(&self.right().dims))
                .all(|(m, (l, r))| *m == l + r)
    }

    /// The split conflation X -> X ⊕ Z -> Z.
    pub fn split(x: &Rep, z: &Rep) -> Self {
        let (inj, _, _, proj) = super::quiver::sum_maps(x, z);
        Self { inflation: inj, deflation: proj }
    }

    /// The conflation 0 -> ker f -> X -> Z given an epimorphism f.
    pub fn from_deflation(f: &Mor) -> Self {
        let (_, inc) = super::quiver::kernel(f);
        Self { inflation: inc, deflation: f.clone() }
    }

    pub fn from_inflation(f: &Mor) -> Self {
        let (_, proj) = cokernel(f);
        Self { inflation: f.clone(), deflation: proj }
    }
}

/// The canonical epimorphism ⊕_v P_v^{dim X_v} -> X sending the k-th copy of
/// P_v to the k-th basis vector of X_v.
pub fn projective_cover_map(x: &Rep) -> Mor {
    let q = &x.quiver;
    let p = projective_sum(q, &x.dims);
    let mut comps: Vec<QMat> = (0..q.len()).map(|v| QMat::zeros(x.dims[v], p.dims[v])).collect();
    let mut col_offsets = vec![0usize; q.len()];
    for v in 0..q.len() {
        let pv = Rep::projective(q, v);
        for k in 0..x.dims[v] {
            // the morphism P_v -> X determined by e_k in X_v
            let f = generator_morphism(&pv, v, x, k);
            for w in 0..q.len() {
                let block = &f.comps[w];
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        comps[w].set(r, col_offsets[w] + c, block.get(r, c).clone());
                    }
                }
                col_offsets[w] += block.cols();
            }
        }
    }
    Mor { source: p, target: x.clone(), comps }
}

/// The morphism P_v -> X sending the trivial path to the k-th basis vector of X_v.
pub(crate) fn generator_morphism(pv: &Rep, v: usize, x: &Rep, k: usize) -> Mor {
    let basis = hom_basis(pv, x);
    // evaluation at the trivial path is the first coordinate of P_v(v), which is one-dimensional
    let evals: Vec<Vec<Rational>> = basis.iter().map(|f| f.comps[v].column(0)).collect();
    let m = QMat::from_columns(x.dims[v], &evals);
    let mut e = QMat::zeros(x.dims[v], 1);
    e.set(k, 0, Rational::from_integer(1.into()));
    let coeffs = m.solve(&e).expect("Hom(P_v, X) maps onto X_v");
    basis.iter().enumerate().fold(Mor::zero(pv, x), |acc, (i, f)| acc.add(&f.scale(coeffs.get(i, 0))))
}

/// 0 -> K -> P -> X -> 0 with P projective.
pub fn presentation(x: &Rep) -> Conflation {
    Conflation::from_deflation(&projective_cover_map(x))
}

pub fn syzygy(x: &Rep) -> Rep {
    presentation(x).left().clone()
}

/// Restriction Hom(P, Y) -> Hom(K, Y) as coordinates in the full map space.
fn restriction_image(pres: &Conflation, y: &Rep) -> QMat {
    let vecs: Vec<Vec<Rational>> =
        hom_basis(pres.middle(), y).iter().map(|f| pres.inflation.then(f).to_vec()).collect();
    let len = pres.left().dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
    QMat::from_columns(len, &vecs)
}

pub fn ext1(x: &Rep, y: &Rep) -> usize {
    let pres = presentation(x);
    hom_dim(pres.left(), y) - restriction_image(&pres, y).rank()
}

pub fn extn(x: &Rep, y: &Rep, n: usize) -> usize {
    assert!(n >= 1, "Ext degree starts at 1");
    let mut src = x.clone();
    for _ in 1..n {
        src = syzygy(&src);
    }
    ext1(&src, y)
}

/// A basis of Ext^1(X, Y), each class as a conflation 0 -> Y -> E -> X -> 0
/// obtained by pushing the presentation out along a cocycle K -> Y.
pub fn ext1_classes(x: &Rep, y: &Rep) -> Vec<Conflation> {
    let pres = presentation(x);
    let cocycles = hom_basis(pres.left(), y);
    let image = restriction_image(&pres, y);
    let all = image.hstack(&QMat::from_columns(image.rows(), &cocycles.iter().map(Mor::to_vec).collect::<Vec<_>>()));
    let (_, pivots) = all.rref();
    pivots
        .into_iter()
        .filter(|&p| p >= image.cols())
        .map(|p| extension_from_cocycle(&pres, &cocycles[p - image.cols()]))
        .collect()
}

/// Pushout of the presentation along a cocycle ξ: K -> Y.
pub fn extension_from_cocycle(pres: &Conflation, xi: &Mor) -> Conflation {
    let po = pushout(&pres.inflation, xi);
    // E -> X induced by (P -> X, 0)
    let joint = pres.deflation.hjoin(&Mor::zero(&xi.target, pres.right()));
    let to_x = factor_through_epi(&po.projection, &joint).expect("the pushout maps onto X");
    Conflation { inflation: po.from_right, deflation: to_x }
}

/// Dimension of Hom(X, Y) minus Ext^1 predicted by the Euler form of a
/// linearly oriented chain: Σ x_i y_i − Σ x_i y_{i+1}.
pub fn chain_euler_form(x: &[usize], y: &[usize]) -> i64 {
    let diag: i64 = x.iter().zip(y).map(|(a, b)| (a * b) as i64).sum();
    let off: i64 = (0..x.len().saturating_sub(1)).map(|i| (x[i] * y[i + 1]) as i64).sum();
    diag - off
}
