use std::collections::BTreeMap;
use std::sync::Arc;

use super::ringrep::RingRep;
use crate::error::{Error, Result};
use crate::exact_arith::{base_change, fp_cokernel, fp_kernel, FPModule, PresentedMap, RingMatrix, RingSpec};

/// A module over a ring representation: one finitely presented module per
/// vertex and transition maps given on generators, extended semilinearly.
///
/// The module at vertex `i` is presented over the ring `R(ring_at[i])` with
/// `ring_at[i] >= i`; ordinary modules have `ring_at[i] = i`, direct images
/// use the join with the image point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagModule {
    pub rep: Arc<RingRep>,
    pub ring_at: Vec<usize>,
    pub vertices: Vec<FPModule>,
    transitions: BTreeMap<(usize, usize), RingMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub edge: (usize, usize),
    pub generator: Option<usize>,
    pub detail: String,
}

/// Axiom violations make a module invalid. Warnings flag edges whose
/// base-change map is not bijective, which is legal for a module but a
/// defect for a sheaf-like one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.warnings.is_empty()
    }
}

/// Outcome of the quasi-coherence test with the first failing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcReport {
    pub quasi_coherent: bool,
    pub failing_edge: Option<(usize, usize)>,
    pub reason: Option<String>,
}

impl DiagModule {
    /// Builds a module from transition matrices on some strict pairs (at
    /// least the covers). Missing pairs are filled in by composition.
    pub fn new(rep: Arc<RingRep>, vertices: Vec<FPModule>, given: Vec<((usize, usize), RingMatrix)>) -> Result<Self> {
        let ring_at = (0..rep.len()).collect();
        Self::with_carriers(rep, ring_at, vertices, given)
    }

    pub fn with_carriers(
        rep: Arc<RingRep>,
        ring_at: Vec<usize>,
        vertices: Vec<FPModule>,
        given: Vec<((usize, usize), RingMatrix)>,
    ) -> Result<Self> {
        rep.require_module_algebra()?;
        let n = rep.len();
        if vertices.len() != n || ring_at.len() != n {
            return Err(Error::Invalid("one module per vertex is required".into()));
        }
        for i in 0..n {
            if !rep.poset.leq(i, ring_at[i]) {
                return Err(Error::Invalid(format!("carrier of vertex {} must lie above it", rep.poset.label(i))));
            }
            if vertices[i].ring != rep.rings[ring_at[i]] {
                return Err(Error::TypeMismatch(format!(
                    "module at {} is over {} but should be over {}",
                    rep.poset.label(i),
                    vertices[i].ring,
                    rep.rings[ring_at[i]]
                )));
            }
        }
        let mut transitions = BTreeMap::new();
        for ((i, j), t) in given {
            if !rep.poset.lt(i, j) {
                return Err(Error::Invalid(format!(
                    "{} <= {} is not a strict relation",
                    rep.poset.label(i),
                    rep.poset.label(j)
                )));
            }
            if t.rows() != vertices[j].gens || t.cols() != vertices[i].gens {
                return Err(Error::TypeMismatch(format!(
                    "transition {} -> {} has shape {}x{}, expected {}x{}",
                    rep.poset.label(i),
                    rep.poset.label(j),
                    t.rows(),
                    t.cols(),
                    vertices[j].gens,
                    vertices[i].gens
                )));
            }
            transitions.insert((i, j), t.with_ring(rep.rings[ring_at[j]].clone()));
        }
        let mut m = Self { rep: rep.clone(), ring_at, vertices, transitions };
        for (i, j) in rep.poset.strict_pairs() {
            if m.transitions.contains_key(&(i, j)) {
                continue;
            }
            let path = rep.poset.hasse_paths(i, j).into_iter().next().unwrap();
            let mut acc = RingMatrix::identity(m.carrier(i), m.vertices[i].gens);
            let mut at = i;
            for &next in &path[1..] {
                let t = m.transitions.get(&(at, next)).cloned().ok_or_else(|| {
                    Error::Invalid(format!("missing transition {} -> {}", rep.poset.label(at), rep.poset.label(next)))
                })?;
                acc = t.mul(&acc.map_ring(&rep.map(m.ring_at[at], m.ring_at[next])));
                at = next;
            }
            m.transitions.insert((i, j), acc);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The ring the module at vertex i is presented over.
    pub fn carrier(&self, i: usize) -> RingSpec {
        self.rep.rings[self.ring_at[i]].clone()
    }

    pub fn gens(&self, i: usize) -> usize {
        self.vertices[i].gens
    }

    /// M^i_j on generators; the identity when i = j.
    pub fn transition(&self, i: usize, j: usize) -> RingMatrix {
        if i == j {
            return RingMatrix::identity(self.carrier(i), self.gens(i));
        }
        self.transitions[&(i, j)].clone()
    }

    pub fn set_transition(&mut self, i: usize, j: usize, t: RingMatrix) {
        self.transitions.insert((i, j), t);
    }

    /// Pushes a generator-coordinate matrix at vertex i forward to vertex j.
    pub fn push_forward(&self, i: usize, j: usize, v: &RingMatrix) -> RingMatrix {
        self.transition(i, j).mul(&v.map_ring(&self.rep.map(self.ring_at[i], self.ring_at[j])))
    }

    pub fn zero(rep: Arc<RingRep>) -> Result<Self> {
        let vertices = rep.rings.iter().map(|r| FPModule::zero(r.clone())).collect();
        let given = rep
            .poset
            .strict_pairs()
            .into_iter()
            .map(|(i, j)| ((i, j), RingMatrix::zeros(rep.rings[j].clone(), 0, 0)))
            .collect();
        Self::new(rep, vertices, given)
    }

    /// The representation R viewed as a module over itself.
    pub fn unit(rep: Arc<RingRep>) -> Result<Self> {
        let vertices = rep.rings.iter().map(|r| FPModule::free(r.clone(), 1)).collect();
        let given = rep
            .poset
            .covers()
            .into_iter()
            .map(|(i, j)| ((i, j), RingMatrix::identity(rep.rings[j].clone(), 1)))
            .collect();
        Self::new(rep, vertices, given)
    }

    /// Checks the module axioms: transitions respect relations and compose.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let poset = &self.rep.poset;
        for (i, j) in poset.strict_pairs() {
            let t = self.transition(i, j);
            if let Err(e) = t.check_entries() {
                report.violations.push(Violation { edge: (i, j), generator: None, detail: e.to_string() });
                continue;
            }
            let rel = self.push_forward(i, j, &self.vertices[i].relations);
            for c in 0..rel.cols() {
                match self.vertices[j].is_zero_element(&rel.column(c)) {
                    Ok(true) => {}
                    Ok(false) => report.violations.push(Violation {
                        edge: (i, j),
                        generator: Some(c),
                        detail: format!("relation {c} of {} is not sent to zero", poset.label(i)),
                    }),
                    Err(e) => {
                        report.violations.push(Violation { edge: (i, j), generator: Some(c), detail: e.to_string() })
                    }
                }
            }
        }
        for (i, j) in poset.strict_pairs() {
            for k in 0..self.len() {
                if !poset.lt(j, k) {
                    continue;
                }
                let via = self.push_forward(j, k, &self.transition(i, j));
                let direct = self.transition(i, k);
                for g in 0..self.gens(i) {
                    let ok = self.vertices[k].equal_elements(&via.column(g), &direct.column(g)).unwrap_or(false);
                    if !ok {
                        report.violations.push(Violation {
                            edge: (i, k),
                            generator: Some(g),
                            detail: format!(
                                "transition {} -> {} differs from the composite through {}",
                                poset.label(i),
                                poset.label(k),
                                poset.label(j)
                            ),
                        });
                    }
                }
            }
        }
        if report.is_valid() {
            for (i, j) in poset.strict_pairs() {
                match self.qc_defect(i, j) {
                    Ok(None) => {}
                    Ok(Some(reason)) => report.warnings.push(Violation {
                        edge: (i, j),
                        generator: None,
                        detail: format!("base change along {} <= {} is {reason}", poset.label(i), poset.label(j)),
                    }),
                    Err(e) => report.warnings.push(Violation { edge: (i, j), generator: None, detail: e.to_string() }),
                }
            }
        }
        report
    }

    fn qc_defect(&self, i: usize, j: usize) -> Result<Option<&'static str>> {
        let f = self.rep.map(self.ring_at[i], self.ring_at[j]);
        let source = base_change(&self.vertices[i], &f)?;
        let map = PresentedMap { source, target: self.vertices[j].clone(), matrix: self.transition(i, j) };
        if !fp_cokernel(&map)?.is_zero()? {
            return Ok(Some("not surjective"));
        }
        if !fp_kernel(&map)?.0.is_zero()? {
            return Ok(Some("not injective"));
        }
        Ok(None)
    }

    /// Tests bijectivity of M(i) ⊗ R(j) -> M(j), m ⊗ r ↦ M^i_j(m)·r, on every strict edge.
    pub fn is_quasicoherent(&self) -> Result<QcReport> {
        for (i, j) in self.rep.poset.strict_pairs() {
            if let Some(reason) = self.qc_defect(i, j)? {
                return Ok(QcReport { quasi_coherent: false, failing_edge: Some((i, j)), reason: Some(reason.into()) });
            }
        }
        Ok(QcReport { quasi_coherent: true, failing_edge: None, reason: None })
    }

    /// Whether every vertex module is free (projective over a PID).
    pub fn is_locally_projective(&self) -> Result<bool> {
        for v in &self.vertices {
            if !v.is_free()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> Result<bool> {
        for v in &self.vertices {
            if !v.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A morphism of diagram modules given by one generator matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagMorphism {
    pub source: DiagModule,
    pub target: DiagModule,
    pub components: Vec<RingMatrix>,
}

impl DiagMorphism {
    pub fn new(source: DiagModule, target: DiagModule, components: Vec<RingMatrix>) -> Result<Self> {
        if !Arc::ptr_eq(&source.rep, &target.rep) && source.rep != target.rep {
            return Err(Error::TypeMismatch("morphism between modules over different ring diagrams".into()));
        }
        if components.len() != source.len() {
            return Err(Error::Invalid("one component per vertex is required".into()));
        }
        let mut comps = Vec::with_capacity(components.len());
        for (i, c) in components.into_iter().enumerate() {
            if !source.rep.poset.leq(source.ring_at[i], target.ring_at[i]) {
                return Err(Error::UnsupportedRing(format!(
                    "component at {} would map out of a larger ring",
                    source.rep.poset.label(i)
                )));
            }
            if c.rows() != target.gens(i) || c.cols() != source.gens(i) {
                return Err(Error::TypeMismatch(format!(
                    "component at {} has shape {}x{}, expected {}x{}",
                    source.rep.poset.label(i),
                    c.rows(),
                    c.cols(),
                    target.gens(i),
                    source.gens(i)
                )));
            }
            comps.push(c.with_ring(target.carrier(i)));
        }
        Ok(Self { source, target, components: comps })
    }

    /// Carrier ring map at vertex i from source to target.
    pub fn carrier_map(&self, i: usize) -> crate::exact_arith::RingMap {
        self.source.rep.map(self.source.ring_at[i], self.target.ring_at[i])
    }

    /// Image of source generator coordinates at vertex i.
    pub fn apply(&self, i: usize, v: &RingMatrix) -> RingMatrix {
        self.components[i].mul(&v.map_ring(&self.carrier_map(i)))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let poset = &self.source.rep.poset;
        for i in 0..self.source.len() {
            let rel = self.apply(i, &self.source.vertices[i].relations);
            if !self.target.vertices[i].is_zero_element(&rel).unwrap_or(false) {
                report.violations.push(Violation {
                    edge: (i, i),
                    generator: None,
                    detail: format!("component at {} does not respect relations", poset.label(i)),
                });
            }
        }
        for (i, j) in poset.strict_pairs() {
            let lhs = self.target.push_forward(i, j, &self.components[i]);
            let rhs = self.apply(j, &self.source.transition(i, j));
            for g in 0..self.source.gens(i) {
                if !self.target.vertices[j].equal_elements(&lhs.column(g), &rhs.column(g)).unwrap_or(false) {
                    report.violations.push(Violation {
                        edge: (i, j),
                        generator: Some(g),
                        detail: format!("square at {} <= {} does not commute", poset.label(i), poset.label(j)),
                    });
                }
            }
        }
        report
    }

    pub fn identity(m: &DiagModule) -> Self {
        let components = (0..m.len()).map(|i| RingMatrix::identity(m.carrier(i), m.gens(i))).collect();
        Self { source: m.clone(), target: m.clone(), components }
    }

    pub fn zero(source: &DiagModule, target: &DiagModule) -> Self {
        let components =
            (0..source.len()).map(|i| RingMatrix::zeros(target.carrier(i), target.gens(i), source.gens(i))).collect();
        Self { source: source.clone(), target: target.clone(), components }
    }

    /// `after ∘ self`
    pub fn then(&self, after: &DiagMorphism) -> Result<DiagMorphism> {
        if self.target.vertices != after.source.vertices {
            return Err(Error::TypeMismatch("morphisms are not composable".into()));
        }
        let components = (0..self.source.len()).map(|i| after.apply(i, &self.components[i])).collect();
        Ok(DiagMorphism { source: self.source.clone(), target: after.target.clone(), components })
    }

    pub fn add(&self, other: &DiagMorphism) -> DiagMorphism {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        DiagMorphism { source: self.source.clone(), target: self.target.clone(), components }
    }

    pub fn neg(&self) -> DiagMorphism {
        DiagMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(RingMatrix::neg).collect(),
        }
    }

    pub fn sub(&self, other: &DiagMorphism) -> DiagMorphism {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &crate::exact_arith::RingElement) -> DiagMorphism {
        DiagMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Whether the morphism is zero as a map of modules.
    pub fn is_zero(&self) -> Result<bool> {
        for i in 0..self.source.len() {
            if !self.target.vertices[i].is_zero_element(&self.components[i])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as maps of modules (modulo target relations).
    pub fn equals(&self, other: &DiagMorphism) -> Result<bool> {
        self.sub(other).is_zero()
    }

    pub fn presented(&self, i: usize) -> Result<PresentedMap> {
        let f = self.carrier_map(i);
        Ok(PresentedMap {
            source: base_change(&self.source.vertices[i], &f)?,
            target: self.target.vertices[i].clone(),
            matrix: self.components[i].clone(),
        })
    }

    /// Vertexwise bijectivity.
    pub fn is_iso(&self) -> Result<bool> {
        for i in 0..self.source.len() {
            if self.source.ring_at[i] != self.target.ring_at[i] {
                return Err(Error::UnsupportedRing("isomorphism test needs matching carriers".into()));
            }
            let p = self.presented(i)?;
            if !fp_cokernel(&p)?.is_zero()? || !fp_kernel(&p)?.0.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
