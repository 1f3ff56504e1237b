//! Graded pieces of modules over Laurent-type rings and global sections as
//! the limit of the underlying diagram, one internal degree at a time.

use crate::diagram::{DiagModule, DiagMorphism};
use crate::error::{Error, Result};
use crate::exact_arith::{rat, FPModule, QMat, Rational, RingElement, RingMatrix, RingSpec};

fn admits(ring: &RingSpec, exp: i64) -> Result<bool> {
    match ring {
        RingSpec::Field => Ok(exp == 0),
        RingSpec::Laurent { window, .. } => Ok(window.admits(exp)),
        RingSpec::Monoid(_) => Err(Error::UnsupportedRing(format!("no graded pieces over {ring}"))),
    }
}

fn degrees(m: &FPModule) -> Vec<i64> {
    m.grading.clone().unwrap_or_else(|| vec![0; m.gens])
}

/// The degree-k part of a graded module: the generators carrying a monomial
/// x^e with e + deg(g) = k, and the degree-k multiples of the relations.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub gens: Vec<usize>,
    pub exps: Vec<i64>,
    pub relations: QMat,
    ring: RingSpec,
    total_gens: usize,
}

fn not_homogeneous() -> Error {
    Error::Invalid("element is not homogeneous for the grading".into())
}

impl Piece {
    pub fn new(m: &FPModule, k: i64) -> Result<Self> {
        let deg = degrees(m);
        let mut gens = Vec::new();
        let mut exps = Vec::new();
        for (g, d) in deg.iter().enumerate() {
            if admits(&m.ring, k - d)? {
                gens.push(g);
                exps.push(k - d);
            }
        }
        let mut piece = Self { gens, exps, relations: QMat::zeros(0, 0), ring: m.ring.clone(), total_gens: m.gens };
        let mut rels = Vec::new();
        for c in 0..m.relations.cols() {
            let column = m.relations.column(c);
            let mut degree = None;
            for g in 0..m.gens {
                for (e, _) in column.get(g, 0).terms() {
                    if *degree.get_or_insert(e + deg[g]) != e + deg[g] {
                        return Err(not_homogeneous());
                    }
                }
            }
            let Some(delta) = degree else { continue };
            if admits(&m.ring, k - delta)? {
                let shifted = column.scale(&RingElement::x_pow(k - delta));
                rels.push(piece.coords(&shifted)?);
            }
        }
        piece.relations = QMat::from_columns(piece.len(), &rels);
        Ok(piece)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Coordinates of a homogeneous degree-k column vector.
    pub fn coords(&self, column: &RingMatrix) -> Result<Vec<Rational>> {
        let mut out = vec![rat(0); self.len()];
        for g in 0..self.total_gens {
            let entry = column.get(g, 0);
            if entry.is_zero() {
                continue;
            }
            let p = self.gens.iter().position(|&h| h == g).ok_or_else(not_homogeneous)?;
            if entry.terms().any(|(e, _)| e != self.exps[p]) {
                return Err(not_homogeneous());
            }
            out[p] = entry.coeff(self.exps[p]);
        }
        Ok(out)
    }

    pub fn column(&self, v: &[Rational]) -> RingMatrix {
        let mut entries = vec![RingElement::zero(); self.total_gens];
        for (p, c) in v.iter().enumerate() {
            entries[self.gens[p]] = RingElement::monomial(c.clone(), self.exps[p]);
        }
        RingMatrix::column_vector(self.ring.clone(), entries)
    }
}

/// Degree-k global sections: compatible families (m_y) in ⊕_y N(y)_k, kept as a
/// spanning set that contains the relation subspace.
#[derive(Clone, Debug)]
pub struct Sections {
    pub degree: i64,
    pieces: Vec<Piece>,
    offsets: Vec<usize>,
    /// Columns spanning the compatible families, relations included.
    pub span: QMat,
    /// Columns spanning ⊕_y of the relation subspaces.
    pub relations: QMat,
}

impl Sections {
    pub fn new(n: &DiagModule, k: i64) -> Result<Self> {
        let pieces = n.vertices.iter().map(|v| Piece::new(v, k)).collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for p in &pieces {
            offsets.push(offsets.last().unwrap() + p.len());
        }
        let width = *offsets.last().unwrap();
        let covers = n.rep.poset.covers();
        // unknowns: the families, then one auxiliary block per cover for the target relations
        let aux: Vec<usize> = covers.iter().map(|&(_, z)| pieces[z].relations.cols()).collect();
        let cols = width + aux.iter().sum::<usize>();
        let rows: usize = covers.iter().map(|&(_, z)| pieces[z].len()).sum();
        let mut system = QMat::zeros(rows, cols);
        let (mut r0, mut a0) = (0, width);
        for (c, &(y, z)) in covers.iter().enumerate() {
            let along = n.rep.map(n.ring_at[y], n.ring_at[z]);
            let t = n.transition(y, z);
            for (p, (&g, &e)) in pieces[y].gens.iter().zip(&pieces[y].exps).enumerate() {
                let image = t.column(g).scale(&along.apply(&RingElement::x_pow(e)));
                for (r, v) in pieces[z].coords(&image)?.into_iter().enumerate() {
                    system.set(r0 + r, offsets[y] + p, v);
                }
            }
            for r in 0..pieces[z].len() {
                system.set(r0 + r, offsets[z] + r, rat(-1));
            }
            system.set_block(r0, a0, &pieces[z].relations.neg());
            r0 += pieces[z].len();
            a0 += aux[c];
        }
        let null = system.nullspace();
        let span = null.select_rows(&(0..width).collect::<Vec<_>>());
        let mut relations = QMat::zeros(width, 0);
        for (y, p) in pieces.iter().enumerate() {
            let mut block = QMat::zeros(width, p.relations.cols());
            block.set_block(offsets[y], 0, &p.relations);
            relations = relations.hstack(&block);
        }
        Ok(Self { degree: k, pieces, offsets, span, relations })
    }

    pub fn width(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn dim(&self) -> usize {
        self.span.rank() - self.relations.rank()
    }

    /// Applies a degree-preserving morphism to a family given in coordinates.
    pub fn apply(&self, f: &DiagMorphism, to: &Sections, v: &[Rational]) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(to.width());
        for y in 0..self.pieces.len() {
            let part = &v[self.offsets[y]..self.offsets[y + 1]];
            let column = self.pieces[y].column(part).map_ring(&f.carrier_map(y));
            out.extend(to.pieces[y].coords(&f.components[y].mul(&column))?);
        }
        Ok(out)
    }
}

/// dim Γ(N)_k for each k in the window.
pub fn global_sections(n: &DiagModule, window: (i64, i64)) -> Result<Vec<(i64, usize)>> {
    (window.0..=window.1).map(|k| Ok((k, Sections::new(n, k)?.dim()))).collect()
}
