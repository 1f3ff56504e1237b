use super::matrix::RingMatrix;
use super::ring::{RingElement, RingMap, RingSpec};
use super::snf::{kernel_basis, snf, solve_linear};
use crate::error::{Error, Result};

/// A finitely presented module: `gens` generators modulo the columns of
/// `relations` (a `gens x r` matrix).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPModule {
    pub ring: RingSpec,
    pub gens: usize,
    pub relations: RingMatrix,
    pub grading: Option<Vec<i64>>,
}

/// Invariant-factor decomposition `R^free ⊕ R/(d_1) ⊕ ... ⊕ R/(d_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure {
    pub free_rank: usize,
    pub torsion: Vec<RingElement>,
}

impl FPModule {
    pub fn new(ring: RingSpec, gens: usize, relations: RingMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::Invalid(format!(
                "relation matrix has {} rows but the module has {gens} generators",
                relations.rows()
            )));
        }
        if relations.ring != ring {
            return Err(Error::TypeMismatch(format!("relations over {} for a module over {ring}", relations.ring)));
        }
        relations.check_entries()?;
        Ok(Self { ring, gens, relations, grading: None })
    }

    pub fn free(ring: RingSpec, rank: usize) -> Self {
        Self { relations: RingMatrix::zeros(ring.clone(), rank, 0), ring, gens: rank, grading: None }
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self::free(ring, 0)
    }

    /// R/(d)
    pub fn cyclic(ring: RingSpec, d: RingElement) -> Self {
        let rel = RingMatrix::from_rows(ring.clone(), vec![vec![d]]);
        Self { ring, gens: 1, relations: rel, grading: None }
    }

    pub fn with_grading(mut self, degrees: Vec<i64>) -> Result<Self> {
        if degrees.len() != self.gens {
            return Err(Error::Invalid("grading must give one degree per generator".into()));
        }
        for c in 0..self.relations.cols() {
            let mut degree = None;
            for g in 0..self.gens {
                for (k, _) in self.relations.get(g, c).terms() {
                    let d = k + degrees[g];
                    if *degree.get_or_insert(d) != d {
                        return Err(Error::Invalid(format!("relation {c} is not homogeneous")));
                    }
                }
            }
        }
        self.grading = Some(degrees);
        Ok(self)
    }

    pub fn direct_sum(&self, other: &FPModule) -> FPModule {
        let grading = match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        FPModule {
            ring: self.ring.clone(),
            gens: self.gens + other.gens,
            relations: self.relations.block_diag(&other.relations),
            grading,
        }
    }

    pub fn structure(&self) -> Result<ModuleStructure> {
        let s = snf(&self.relations)?;
        let torsion = s.diagonal().into_iter().filter(|d| !self.ring.is_unit(d)).collect();
        Ok(ModuleStructure { free_rank: self.gens - s.rank, torsion })
    }

    pub fn is_zero(&self) -> Result<bool> {
        let st = self.structure()?;
        Ok(st.free_rank == 0 && st.torsion.is_empty())
    }

    /// Over a PID a finitely generated module is projective iff it is free
    /// iff it is torsion-free.
    pub fn is_free(&self) -> Result<bool> {
        Ok(self.structure()?.torsion.is_empty())
    }

    /// Whether the column vector `v` (over this ring) is zero in the module.
    pub fn is_zero_element(&self, v: &RingMatrix) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        Ok(solve_linear(&self.relations, v)?.is_some())
    }

    /// Whether two generator-coordinate matrices agree column by column modulo relations.
    pub fn equal_elements(&self, a: &RingMatrix, b: &RingMatrix) -> Result<bool> {
        let diff = a.sub(b);
        if diff.is_zero() {
            return Ok(true);
        }
        Ok(solve_linear(&self.relations, &diff)?.is_some())
    }
}

/// M ⊗ R(j) along a ring map; the presentation matrix is pushed forward entrywise.
pub fn base_change(m: &FPModule, f: &RingMap) -> Result<FPModule> {
    if f.source != m.ring {
        return Err(Error::TypeMismatch(format!("ring map from {} applied to a module over {}", f.source, m.ring)));
    }
    let grading = match f.kind {
        super::ring::RingMapKind::Identity | super::ring::RingMapKind::Inclusion => m.grading.clone(),
        _ => None,
    };
    Ok(FPModule { ring: f.target.clone(), gens: m.gens, relations: m.relations.map_ring(f), grading })
}

/// A module map given on generators: column `j` is the image of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedMap {
    pub source: FPModule,
    pub target: FPModule,
    pub matrix: RingMatrix,
}

impl PresentedMap {
    pub fn new(source: FPModule, target: FPModule, matrix: RingMatrix) -> Result<Self> {
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::TypeMismatch("map matrix shape does not match the modules".into()));
        }
        source.ring.require_euclidean()?;
        let image_of_relations = matrix.mul(&source.relations);
        if !target.is_zero_element(&image_of_relations)? {
            return Err(Error::Invalid("map does not respect the source relations".into()));
        }
        Ok(Self { source, target, matrix })
    }
}

pub fn fp_cokernel(f: &PresentedMap) -> Result<FPModule> {
    f.target.ring.require_euclidean()?;
    Ok(FPModule {
        ring: f.target.ring.clone(),
        gens: f.target.gens,
        relations: f.target.relations.hstack(&f.matrix),
        grading: f.target.grading.clone(),
    })
}

/// Submodule of `m` generated by the columns of `vectors`, as a presented
/// module together with its inclusion.
pub fn fp_submodule(m: &FPModule, vectors: &RingMatrix) -> Result<(FPModule, PresentedMap)> {
    let s = vectors.cols();
    let syz = kernel_basis(&vectors.hstack(&m.relations))?;
    let rel = syz.select_rows((0..s).collect::<Vec<_>>());
    let keep: Vec<usize> = (0..rel.cols()).filter(|&c| !rel.column(c).is_zero()).collect();
    let sub = FPModule { ring: m.ring.clone(), gens: s, relations: rel.select_columns(&keep), grading: None };
    let inclusion = PresentedMap { source: sub.clone(), target: m.clone(), matrix: vectors.clone() };
    Ok((sub, inclusion))
}

/// Kernel of a presented map with its inclusion into the source.
pub fn fp_kernel(f: &PresentedMap) -> Result<(FPModule, PresentedMap)> {
    f.source.ring.require_euclidean()?;
    let g = f.source.gens;
    let ker = kernel_basis(&f.matrix.hstack(&f.target.relations))?;
    let vectors = ker.select_rows((0..g).collect::<Vec<_>>());
    let keep: Vec<usize> = (0..vectors.cols()).filter(|&c| !vectors.column(c).is_zero()).collect();
    fp_submodule(&f.source, &vectors.select_columns(&keep))
}

pub fn fp_image(f: &PresentedMap) -> Result<(FPModule, PresentedMap)> {
    fp_submodule(&f.target, &f.matrix)
}

/// Hom(M, N) as a presented module; `generators[k]` is the `N.gens x M.gens`
/// matrix of the k-th generator.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FPModule,
    pub generators: Vec<RingMatrix>,
}

pub fn fp_hom(m: &FPModule, n: &FPModule) -> Result<HomModule> {
    m.ring.require_euclidean()?;
    if m.ring != n.ring {
        return Err(Error::TypeMismatch("hom between modules over different rings".into()));
    }
    let ring = m.ring.clone();
    let (gm, gn, rm) = (m.gens, n.gens, m.relations.cols());
    // Phi (gn x gm) vectorized column-major; Phi * rel_M lands in N^(rm).
    let power = |copies: usize| {
        let mut rel = RingMatrix::zeros(ring.clone(), 0, 0);
        for _ in 0..copies {
            rel = rel.block_diag(&n.relations);
        }
        FPModule { ring: ring.clone(), gens: gn * copies, relations: rel, grading: None }
    };
    let source = power(gm);
    let target = power(rm);
    let matrix = m.relations.transpose().kron(&RingMatrix::identity(ring.clone(), gn));
    let map = PresentedMap { source, target, matrix };
    let (module, inclusion) = fp_kernel(&map)?;
    let generators = (0..module.gens)
        .map(|k| RingMatrix::from_fn(ring.clone(), gn, gm, |a, b| inclusion.matrix.get(b * gn + a, k).clone()))
        .collect();
    Ok(HomModule { module, generators })
}

impl HomModule {
    /// A Q-basis of the hom space. Free summands are spanned by x^k times the
    /// generator for k in the supplied window, so a window is required unless
    /// the space is finite-dimensional.
    pub fn q_basis(&self, window: Option<(i64, i64)>) -> Result<Vec<RingMatrix>> {
        let ring = &self.module.ring;
        let s = snf(&self.module.relations)?;
        let mut out = Vec::new();
        for i in 0..self.module.gens {
            // the i-th invariant generator, in old generator coordinates
            let coeffs = s.u_inv.column(i);
            let combo = self.generators.iter().enumerate().fold(None::<RingMatrix>, |acc, (k, g)| {
                let term = g.scale(coeffs.get(k, 0));
                Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                })
            });
            let Some(gen) = combo else { continue };
            if i < s.rank {
                let d = s.d.get(i, i);
                for k in ring.quotient_basis(d) {
                    out.push(gen.scale(&RingElement::x_pow(k)));
                }
            } else if ring.is_field() {
                out.push(gen);
            } else {
                let (lo, hi) = window.ok_or_else(|| {
                    Error::WindowRequired("the hom space has a free summand over a polynomial ring".into())
                })?;
                let win = ring.window()?;
                for k in lo..=hi {
                    if win.admits(k) {
                        out.push(gen.scale(&RingElement::x_pow(k)));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ring::RingMapKind;

    #[test]
    fn base_change_kills_unit_torsion() {
        let poly = RingSpec::poly("x");
        let m = FPModule::cyclic(poly.clone(), RingElement::x_pow(1));
        let inc = RingMap::new(poly, RingSpec::laurent("x"), RingMapKind::Inclusion).unwrap();
        assert!(base_change(&m, &inc).unwrap().is_zero().unwrap());
    }

    #[test]
    fn cokernel_of_x() {
        let poly = RingSpec::poly("x");
        let r = FPModule::free(poly.clone(), 1);
        let f = PresentedMap::new(r.clone(), r, RingMatrix::from_rows(poly.clone(), vec![vec![RingElement::x_pow(1)]]))
            .unwrap();
        let c = fp_cokernel(&f).unwrap();
        assert_eq!(c.structure().unwrap(), ModuleStructure { free_rank: 0, torsion: vec![RingElement::x_pow(1)] });
    }

    #[test]
    fn kernel_of_projection() {
        let q = RingSpec::Field;
        let f = PresentedMap::new(
            FPModule::free(q.clone(), 2),
            FPModule::free(q.clone(), 1),
            RingMatrix::from_rows(q, vec![vec![RingElement::one(), RingElement::zero()]]),
        )
        .unwrap();
        let (k, _) = fp_kernel(&f).unwrap();
        assert_eq!(k.structure().unwrap(), ModuleStructure { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn hom_between_truncations() {
        let poly = RingSpec::poly("x");
        let a = FPModule::cyclic(poly.clone(), RingElement::x_pow(1));
        let b = FPModule::cyclic(poly.clone(), RingElement::x_pow(2));
        let h = fp_hom(&a, &b).unwrap();
        let basis = h.q_basis(None).unwrap();
        assert_eq!(basis.len(), 1);
        // the single map sends the generator to a nonzero multiple of x
        let img = basis[0].get(0, 0);
        assert_eq!(img.terms().map(|(k, _)| k).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn free_hom_needs_window() {
        let poly = RingSpec::poly("x");
        let r = FPModule::free(poly, 1);
        let h = fp_hom(&r, &r).unwrap();
        assert!(matches!(h.q_basis(None), Err(Error::WindowRequired(_))));
        assert_eq!(h.q_basis(Some((-2, 3))).unwrap().len(), 4);
    }
}
