//! Hom spaces between diagram modules as exact Q-linear constraint systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::builtins::projective_generator;
use super::module::{DiagModule, DiagMorphism};
use super::ringrep::RingRep;
use crate::error::{Error, Result};
use crate::exact_arith::{QMat, Rational, RingElement, RingMap, RingMapKind, RingMatrix, RingSpec};

/// A matrix of unknown ring elements whose coefficients are Q-variables.
#[derive(Clone, Debug)]
struct Unknown {
    base: usize,
    rows: usize,
    cols: usize,
    exps: Vec<i64>,
}

impl Unknown {
    fn var(&self, r: usize, c: usize, e: usize) -> usize {
        self.base + (r * self.cols + c) * self.exps.len() + e
    }

    fn size(&self) -> usize {
        self.rows * self.cols * self.exps.len()
    }
}

fn mapped_exp(e: i64, f: &RingMap) -> i64 {
    if f.kind == RingMapKind::SwapInclusion {
        -e
    } else {
        e
    }
}

/// Sparse equations keyed by (constraint, row, col, exponent).
#[derive(Default)]
struct System {
    vars: usize,
    rows: BTreeMap<(usize, usize, usize, i64), BTreeMap<usize, Rational>>,
}

impl System {
    fn unknown(&mut self, rows: usize, cols: usize, exps: Vec<i64>) -> Unknown {
        let u = Unknown { base: self.vars, rows, cols, exps };
        self.vars += u.size();
        u
    }

    fn push(&mut self, key: (usize, usize, usize, i64), var: usize, c: Rational) {
        let row = self.rows.entry(key).or_default();
        let slot = row.entry(var).or_insert_with(|| Rational::from_integer(0.into()));
        *slot += c;
    }

    /// Adds sign * known * f(unknown) to constraint `id`.
    fn known_times(&mut self, id: usize, known: &RingMatrix, u: &Unknown, f: &RingMap, sign: i64) {
        for r in 0..known.rows() {
            for k in 0..known.cols() {
                for (a, coef) in known.get(r, k).terms() {
                    for c in 0..u.cols {
                        for (ei, &e) in u.exps.iter().enumerate() {
                            self.push(
                                (id, r, c, a + mapped_exp(e, f)),
                                u.var(k, c, ei),
                                coef * Rational::from_integer(sign.into()),
                            );
                        }
                    }
                }
            }
        }
    }

    /// Adds sign * f(unknown) * known to constraint `id`.
    fn times_known(&mut self, id: usize, u: &Unknown, known: &RingMatrix, f: &RingMap, sign: i64) {
        for r in 0..u.rows {
            for k in 0..known.rows() {
                for c in 0..known.cols() {
                    for (a, coef) in known.get(k, c).terms() {
                        for (ei, &e) in u.exps.iter().enumerate() {
                            self.push(
                                (id, r, c, a + mapped_exp(e, f)),
                                u.var(r, k, ei),
                                coef * Rational::from_integer(sign.into()),
                            );
                        }
                    }
                }
            }
        }
    }

    fn matrix(&self) -> QMat {
        let mut m = QMat::zeros(self.rows.len(), self.vars);
        for (i, row) in self.rows.values().enumerate() {
            for (&v, c) in row {
                m.set(i, v, c.clone());
            }
        }
        m
    }
}

fn exps_for(ring: &RingSpec, lo: i64, hi: i64) -> Vec<i64> {
    match ring.window() {
        Ok(w) => (lo..=hi).filter(|&k| w.admits(k)).collect(),
        Err(_) => vec![0],
    }
}

fn max_abs_exp(m: &RingMatrix) -> i64 {
    m.entries().iter().flat_map(|e| e.terms().map(|(k, _)| k.abs())).max().unwrap_or(0)
}

fn identity_map(ring: &RingSpec) -> RingMap {
    RingMap::identity(ring.clone())
}

/// Per-vertex unknown morphism components over the target carriers.
fn component_unknowns(sys: &mut System, m: &DiagModule, n: &DiagModule, lo: i64, hi: i64) -> Vec<Unknown> {
    (0..m.len()).map(|i| sys.unknown(n.gens(i), m.gens(i), exps_for(&n.carrier(i), lo, hi))).collect()
}

/// Span of the first `width` coordinates of a null space.
fn project(null: &QMat, width: usize) -> QMat {
    null.select_rows(&(0..width).collect::<Vec<_>>())
}

fn to_morphism(m: &DiagModule, n: &DiagModule, comps: &[Unknown], v: &[Rational]) -> Result<DiagMorphism> {
    let matrices = comps
        .iter()
        .enumerate()
        .map(|(i, u)| {
            RingMatrix::from_fn(n.carrier(i), u.rows, u.cols, |r, c| {
                RingElement::from_terms(u.exps.iter().enumerate().map(|(ei, &e)| (e, v[u.var(r, c, ei)].clone())))
            })
        })
        .collect();
    DiagMorphism::new(m.clone(), n.clone(), matrices)
}

fn needs_window(m: &DiagModule, n: &DiagModule) -> bool {
    (0..m.len()).any(|i| !n.carrier(i).is_field() && m.gens(i) > 0 && n.gens(i) > 0)
}

/// A Q-basis of Hom(M, N) among morphisms whose component entries have
/// exponents in `window`, modulo morphisms that vanish as maps of modules.
/// Relation and gluing constraints are solved with auxiliary unknowns over a
/// padded window.
pub fn hom_space(m: &DiagModule, n: &DiagModule, window: Option<(i64, i64)>) -> Result<Vec<DiagMorphism>> {
    if m.rep != n.rep {
        return Err(Error::TypeMismatch("hom between modules over different diagrams".into()));
    }
    m.rep.require_module_algebra()?;
    for i in 0..m.len() {
        if !m.rep.poset.leq(m.ring_at[i], n.ring_at[i]) {
            return Err(Error::UnsupportedRing("hom into a module over a smaller carrier ring".into()));
        }
    }
    let (lo, hi) = match window {
        Some(w) => w,
        None if needs_window(m, n) => {
            return Err(Error::WindowRequired("hom spaces over polynomial rings are reported per degree window".into()))
        }
        None => (0, 0),
    };
    let pad = 2
        + (0..m.len())
            .map(|i| max_abs_exp(&m.vertices[i].relations) + max_abs_exp(&n.vertices[i].relations))
            .sum::<i64>()
        + m.rep
            .poset
            .covers()
            .into_iter()
            .map(|(i, j)| max_abs_exp(&m.transition(i, j)) + max_abs_exp(&n.transition(i, j)))
            .sum::<i64>();
    let (wlo, whi) = (lo - pad, hi + pad);

    let mut sys = System::default();
    let comps = component_unknowns(&mut sys, m, n, lo, hi);
    let width = sys.vars;
    let mut id = 0;
    for i in 0..m.len() {
        let rel_m = &m.vertices[i].relations;
        let rel_n = &n.vertices[i].relations;
        if rel_m.cols() == 0 {
            continue;
        }
        let to_target = m.rep.map(m.ring_at[i], n.ring_at[i]);
        let carrier = n.carrier(i);
        sys.times_known(id, &comps[i], &rel_m.map_ring(&to_target), &identity_map(&carrier), 1);
        if rel_n.cols() > 0 {
            let aux = sys.unknown(rel_n.cols(), rel_m.cols(), exps_for(&carrier, wlo, whi));
            sys.known_times(id, rel_n, &aux, &identity_map(&carrier), -1);
        }
        id += 1;
    }
    for (i, j) in m.rep.poset.covers() {
        let carrier = n.carrier(j);
        let along = m.rep.map(n.ring_at[i], n.ring_at[j]);
        sys.known_times(id, &n.transition(i, j), &comps[i], &along, 1);
        let m_t = m.transition(i, j).map_ring(&m.rep.map(m.ring_at[j], n.ring_at[j]));
        sys.times_known(id, &comps[j], &m_t, &identity_map(&carrier), -1);
        let rel_n = &n.vertices[j].relations;
        if rel_n.cols() > 0 {
            let aux = sys.unknown(rel_n.cols(), m.gens(i), exps_for(&carrier, wlo, whi));
            sys.known_times(id, rel_n, &aux, &identity_map(&carrier), -1);
        }
        id += 1;
    }
    let solutions = project(&sys.matrix().nullspace(), width);

    // morphisms in the window that vanish as maps: f(i) = rel_N(i) * W
    let mut zero_sys = System::default();
    let zcomps = component_unknowns(&mut zero_sys, m, n, lo, hi);
    for (i, u) in zcomps.iter().enumerate() {
        let carrier = n.carrier(i);
        let ident = RingMatrix::identity(carrier.clone(), n.gens(i));
        zero_sys.known_times(i, &ident, u, &identity_map(&carrier), 1);
        let rel_n = &n.vertices[i].relations;
        if rel_n.cols() > 0 {
            let aux = zero_sys.unknown(rel_n.cols(), m.gens(i), exps_for(&carrier, wlo, whi));
            zero_sys.known_times(i, rel_n, &aux, &identity_map(&carrier), -1);
        }
    }
    let zeros = project(&zero_sys.matrix().nullspace(), width);

    let combined = zeros.hstack(&solutions);
    let (_, pivots) = combined.rref();
    pivots.into_iter().filter(|&p| p >= zeros.cols()).map(|p| to_morphism(m, n, &comps, &combined.column(p))).collect()
}

/// The bijection Hom(P_i, M) ≅ M(i).
pub struct GeneratorHom {
    pub vertex: usize,
    pub generator: DiagModule,
    pub module: DiagModule,
}

impl GeneratorHom {
    pub fn new(rep: &Arc<RingRep>, i: usize, module: &DiagModule) -> Self {
        Self { vertex: i, generator: projective_generator(rep, i), module: module.clone() }
    }

    /// f ↦ f(i)(1), as a column over the carrier of M(i).
    pub fn to_element(&self, f: &DiagMorphism) -> RingMatrix {
        f.components[self.vertex].column(0)
    }

    /// m ↦ the morphism sending 1 at j >= i to the image of m in M(j).
    pub fn from_element(&self, m: &RingMatrix) -> Result<DiagMorphism> {
        let poset = &self.module.rep.poset;
        let comps = (0..self.module.len())
            .map(|j| {
                if poset.leq(self.vertex, j) {
                    self.module.push_forward(self.vertex, j, m)
                } else {
                    RingMatrix::zeros(self.module.carrier(j), self.module.gens(j), 0)
                }
            })
            .collect();
        DiagMorphism::new(self.generator.clone(), self.module.clone(), comps)
    }

    /// Checks both round trips on an element and a morphism.
    pub fn round_trip(&self, m: &RingMatrix, f: &DiagMorphism) -> Result<bool> {
        let back = self.to_element(&self.from_element(m)?);
        let elem_ok = self.module.vertices[self.vertex].equal_elements(&back, m)?;
        let g = self.from_element(&self.to_element(f))?;
        Ok(elem_ok && g.equals(f)? && g.validate().is_valid())
    }
}

pub fn hom_from_generator(rep: &Arc<RingRep>, i: usize, module: &DiagModule) -> GeneratorHom {
    GeneratorHom::new(rep, i, module)
}
