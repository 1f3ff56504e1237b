//! Named definitions resolved into core objects, with the file and line each
//! came from.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use qcw_core::complexes::{BoundedComplex, ComplexMorphism};
use qcw_core::diagram::{DiagModule, DiagMorphism, FinitePoset, RingRep};
use qcw_core::exact_arith::{ratio, FPModule, RingElement, RingMap, RingMapKind, RingMatrix, RingSpec};

use crate::error::CliError;
use crate::syntax::{parse, Def, DefBody, EntryValue, MatrixLit, PolyLit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub file: String,
    pub line: usize,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleKind {
    Projective,
    Injective,
    Degenerate,
    EvenDefect,
    InjectiveModel,
}

impl TripleKind {
    pub fn keyword(self) -> &'static str {
        match self {
            Self::Projective => "projective",
            Self::Injective => "injective",
            Self::Degenerate => "degenerate",
            Self::EvenDefect => "even-defect",
            Self::InjectiveModel => "injective-model",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Self::Projective, Self::Injective, Self::Degenerate, Self::EvenDefect, Self::InjectiveModel]
            .into_iter()
            .find(|k| k.keyword() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSpec {
    pub poset_name: String,
    pub poset: FinitePoset,
    pub complexes: Option<(i64, i64)>,
    pub kind: TripleKind,
}

/// A resolved definition. Names of referenced definitions are kept for writing back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Poset(FinitePoset),
    RingRep { rep: Arc<RingRep>, poset: String },
    Module { module: DiagModule, over: String },
    Morphism { map: DiagMorphism, source: String, target: String },
    Complex { complex: BoundedComplex, components: Vec<(i64, String)>, differentials: Vec<(i64, String)> },
    ChainMap { map: ComplexMorphism, source: String, target: String, components: Vec<(i64, String)> },
    Triple(TripleSpec),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Poset(_) => "poset",
            Object::RingRep { .. } => "ringrep",
            Object::Module { .. } => "module",
            Object::Morphism { .. } | Object::ChainMap { .. } => "morphism",
            Object::Complex { .. } => "complex",
            Object::Triple(_) => "triple",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub object: Object,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

/// A chain poset named `A<n>`.
pub fn builtin_poset(name: &str) -> Option<FinitePoset> {
    let n: usize = name.strip_prefix('A')?.parse().ok()?;
    (1..=64).contains(&n).then(|| FinitePoset::chain(n))
}

pub fn builtin_ringrep(name: &str) -> Option<Arc<RingRep>> {
    match name {
        "P1" => Some(qcw_core::diagram::p1_rep()),
        "P2" => Some(Arc::new(qcw_core::diagram::p2_ringrep())),
        _ => None,
    }
}

pub fn field_rep(name: &str, poset: &FinitePoset) -> Arc<RingRep> {
    Arc::new(RingRep::constant_field(name, poset.clone()))
}

fn ring_spec(kind: &str, var: Option<&str>) -> Option<RingSpec> {
    match (kind, var) {
        ("field", None) => Some(RingSpec::Field),
        ("poly", Some(v)) => Some(RingSpec::poly(v)),
        ("ipoly", Some(v)) => Some(RingSpec::ipoly(v)),
        ("laurent", Some(v)) => Some(RingSpec::laurent(v)),
        _ => None,
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(&mut self, path: &Path) -> Result<(), CliError> {
        let src = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        self.load_str(&path.display().to_string(), &src)
    }

    pub fn load_str(&mut self, file: &str, src: &str) -> Result<(), CliError> {
        for def in parse(file, src)? {
            self.define(file, def)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&k| &self.entries[k])
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn poset(&self, name: &str) -> Option<FinitePoset> {
        match self.get(name).map(|e| &e.object) {
            Some(Object::Poset(p)) => Some(p.clone()),
            _ => builtin_poset(name),
        }
    }

    /// A ring diagram by name; a poset name stands for its constant field diagram.
    pub fn ringrep(&self, name: &str) -> Option<Arc<RingRep>> {
        match self.get(name).map(|e| &e.object) {
            Some(Object::RingRep { rep, .. }) => Some(rep.clone()),
            Some(Object::Poset(p)) => Some(field_rep(name, p)),
            _ => builtin_ringrep(name).or_else(|| builtin_poset(name).map(|p| field_rep(name, &p))),
        }
    }

    fn define(&mut self, file: &str, def: Def) -> Result<(), CliError> {
        if let Some(prev) = self.get(&def.name) {
            return Err(CliError::reference(
                file,
                def.line,
                format!("duplicate name `{}` (first defined at {})", def.name, prev.provenance),
            ));
        }
        let provenance = Provenance { file: file.to_string(), line: def.line };
        let mut warnings = Vec::new();
        let object = Resolver { ws: self, file, line: def.line }.resolve(&def.name, def.body, &mut warnings)?;
        self.index.insert(def.name.clone(), self.entries.len());
        self.entries.push(Entry { name: def.name, object, provenance, warnings });
        Ok(())
    }
}

struct Resolver<'a> {
    ws: &'a Workspace,
    file: &'a str,
    line: usize,
}

impl Resolver<'_> {
    fn reference(&self, msg: impl Into<String>) -> CliError {
        CliError::reference(self.file, self.line, msg)
    }

    fn invalid(&self, msg: impl Into<String>) -> CliError {
        CliError::validation(self.file, self.line, msg)
    }

    fn core<T>(&self, r: qcw_core::Result<T>) -> Result<T, CliError> {
        r.map_err(|e| self.invalid(e.to_string()))
    }

    fn vertex(&self, poset: &FinitePoset, v: &str) -> Result<usize, CliError> {
        poset.index_of(v).ok_or_else(|| self.reference(format!("no element `{v}` in the poset")))
    }

    fn resolve(&self, name: &str, body: DefBody, warnings: &mut Vec<String>) -> Result<Object, CliError> {
        match body {
            DefBody::Poset { elements, relations } => {
                let pairs = relations
                    .iter()
                    .map(|(a, b)| {
                        let find = |x: &str| {
                            elements
                                .iter()
                                .position(|e| e == x)
                                .ok_or_else(|| self.reference(format!("no element `{x}` in poset {name}")))
                        };
                        Ok((find(a)?, find(b)?))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                self.core(FinitePoset::new(elements, &pairs)).map(Object::Poset)
            }
            DefBody::RingRep { poset, rings, swaps } => {
                let p = self.ws.poset(&poset).ok_or_else(|| self.reference(format!("unknown poset `{poset}`")))?;
                let mut specs: Vec<Option<RingSpec>> = vec![None; p.len()];
                for (v, kind, var) in &rings {
                    let i = self.vertex(&p, v)?;
                    let spec = ring_spec(kind, var.as_deref())
                        .ok_or_else(|| self.invalid(format!("unknown ring `{kind}`")))?;
                    specs[i] = Some(spec);
                }
                let specs = specs
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| s.ok_or_else(|| self.invalid(format!("no ring given for `{}`", p.label(i)))))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut given = Vec::new();
                for (a, b) in &swaps {
                    let (i, j) = (self.vertex(&p, a)?, self.vertex(&p, b)?);
                    let f = self.core(RingMap::new(specs[i].clone(), specs[j].clone(), RingMapKind::SwapInclusion))?;
                    given.push(((i, j), f));
                }
                let rep = self.core(RingRep::new(name, p, specs, given))?;
                warnings.extend(rep.validate());
                Ok(Object::RingRep { rep: Arc::new(rep), poset })
            }
            DefBody::Module { over, vertices, edges } => {
                let rep =
                    self.ws.ringrep(&over).ok_or_else(|| self.reference(format!("unknown ring diagram `{over}`")))?;
                let poset = &rep.poset;
                let mut gens = vec![0usize; rep.len()];
                let mut lits = vec![None; rep.len()];
                for lit in vertices {
                    let i = self.vertex(poset, &lit.vertex)?;
                    if lits[i].is_some() {
                        return Err(self.invalid(format!("vertex `{}` described twice", lit.vertex)));
                    }
                    gens[i] = lit.gens;
                    lits[i] = Some(lit);
                }
                let mut modules = Vec::new();
                for (i, lit) in lits.into_iter().enumerate() {
                    let ring = rep.rings[i].clone();
                    let mut m = match lit.as_ref().and_then(|l| l.relations.as_ref()) {
                        Some(rel) => {
                            let cols = rel.first().map_or(0, Vec::len);
                            let matrix = self.matrix(rel, &ring, gens[i], cols)?;
                            self.core(FPModule::new(ring, gens[i], matrix))?
                        }
                        None => FPModule::free(ring, gens[i]),
                    };
                    if let Some(degs) = lit.and_then(|l| l.degrees) {
                        m = self.core(m.with_grading(degs))?;
                    }
                    modules.push(m);
                }
                let mut given = Vec::new();
                for (a, b, lit) in &edges {
                    let (i, j) = (self.vertex(poset, a)?, self.vertex(poset, b)?);
                    if !poset.lt(i, j) {
                        return Err(self.invalid(format!("{a} -> {b} is not a strict relation")));
                    }
                    given.push(((i, j), self.matrix(lit, &rep.rings[j], gens[j], gens[i])?));
                }
                for (i, j) in poset.covers() {
                    if !given.iter().any(|(e, _)| *e == (i, j)) {
                        given.push(((i, j), RingMatrix::zeros(rep.rings[j].clone(), gens[j], gens[i])));
                    }
                }
                let module = self.core(DiagModule::new(rep.clone(), modules, given))?;
                let report = module.validate();
                if let Some(v) = report.violations.first() {
                    return Err(self.invalid(format!("module {name}: {}", v.detail)));
                }
                warnings.extend(report.warnings.iter().map(|w| w.detail.clone()));
                Ok(Object::Module { module, over })
            }
            DefBody::Morphism { source, target, entries } => self.morphism(name, source, target, entries),
            DefBody::Complex { mut components, differentials } => {
                if components.is_empty() {
                    return Err(self.invalid("a complex needs at least one component"));
                }
                components.sort_by_key(|c| c.0);
                let modules = components
                    .iter()
                    .map(|(n, m)| match self.ws.get(m).map(|e| &e.object) {
                        Some(Object::Module { module, .. }) => Ok((*n, module.clone())),
                        _ => Err(self.reference(format!("`{m}` is not a module"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let rep = modules[0].1.rep.clone();
                let (lo, hi) = (modules[0].0, modules.last().unwrap().0);
                let zero = self.core(DiagModule::zero(rep.clone()))?;
                let comps: Vec<DiagModule> = (lo..=hi)
                    .map(|n| modules.iter().find(|(k, _)| *k == n).map_or_else(|| zero.clone(), |(_, m)| m.clone()))
                    .collect();
                let mut diffs = Vec::new();
                for n in lo..hi {
                    let (s, t) = (&comps[(n - lo) as usize], &comps[(n - lo + 1) as usize]);
                    let d = match differentials.iter().find(|(k, _)| *k == n) {
                        Some((_, f)) => match self.ws.get(f).map(|e| &e.object) {
                            Some(Object::Morphism { map, .. }) => map.clone(),
                            _ => return Err(self.reference(format!("`{f}` is not a module morphism"))),
                        },
                        None => DiagMorphism::zero(s, t),
                    };
                    diffs.push(d);
                }
                if let Some((n, _)) = differentials.iter().find(|(n, _)| *n < lo || *n >= hi) {
                    return Err(self.invalid(format!("differential in degree {n} leaves the complex")));
                }
                let complex = self.core(BoundedComplex::new(rep, lo, comps, diffs))?;
                Ok(Object::Complex { complex, components, differentials })
            }
            DefBody::Triple { on, complexes, kind } => {
                let poset = self.ws.poset(&on).ok_or_else(|| self.reference(format!("unknown poset `{on}`")))?;
                let kind =
                    TripleKind::parse(&kind).ok_or_else(|| self.invalid(format!("unknown triple kind `{kind}`")))?;
                if (kind == TripleKind::InjectiveModel) != complexes.is_some() {
                    return Err(self.invalid(
                        "injective-model triples need a `complexes LO..HI` window, others must not have one",
                    ));
                }
                if let Some((lo, hi)) = complexes {
                    if lo > hi {
                        return Err(self.invalid(format!("empty degree window {lo}..{hi}")));
                    }
                }
                Ok(Object::Triple(TripleSpec { poset_name: on, poset, complexes, kind }))
            }
        }
    }

    fn morphism(
        &self,
        name: &str,
        source: String,
        target: String,
        entries: Vec<(String, EntryValue)>,
    ) -> Result<Object, CliError> {
        let lookup =
            |n: &str| self.ws.get(n).map(|e| &e.object).ok_or_else(|| self.reference(format!("unknown name `{n}`")));
        match (lookup(&source)?, lookup(&target)?) {
            (Object::Module { module: s, .. }, Object::Module { module: t, .. }) => {
                let poset = &s.rep.poset;
                let mut comps: Vec<RingMatrix> =
                    (0..s.len()).map(|i| RingMatrix::zeros(t.carrier(i), t.gens(i), s.gens(i))).collect();
                for (key, value) in &entries {
                    let i = self.vertex(poset, key)?;
                    let EntryValue::Matrix(lit) = value else {
                        return Err(self.invalid(format!("component at `{key}` must be a matrix")));
                    };
                    comps[i] = self.matrix(lit, &t.carrier(i), t.gens(i), s.gens(i))?;
                }
                let map = self.core(DiagMorphism::new(s.clone(), t.clone(), comps))?;
                if let Some(v) = map.validate().violations.first() {
                    return Err(self.invalid(format!("morphism {name}: {}", v.detail)));
                }
                Ok(Object::Morphism { map, source, target })
            }
            (Object::Complex { complex: s, .. }, Object::Complex { complex: t, .. }) => {
                let mut components = Vec::new();
                let mut maps: Vec<DiagMorphism> =
                    s.degrees().map(|n| DiagMorphism::zero(&s.component(n), &t.component(n))).collect();
                for (key, value) in entries {
                    let n: i64 = key.parse().map_err(|_| self.invalid(format!("`{key}` is not a degree")))?;
                    if !s.degrees().contains(&n) {
                        return Err(self.invalid(format!("degree {n} is outside the source complex")));
                    }
                    let EntryValue::Name(f) = value else {
                        return Err(self.invalid(format!("degree {n} must name a module morphism")));
                    };
                    let Some(Object::Morphism { map, .. }) = self.ws.get(&f).map(|e| &e.object) else {
                        return Err(self.reference(format!("`{f}` is not a module morphism")));
                    };
                    maps[(n - s.lo) as usize] = map.clone();
                    components.push((n, f));
                }
                let map = self.core(ComplexMorphism::new(s.clone(), t.clone(), maps))?;
                Ok(Object::ChainMap { map, source, target, components })
            }
            _ => Err(self.reference(format!("morphism {name} needs two modules or two complexes"))),
        }
    }

    fn element(&self, lit: &PolyLit, ring: &RingSpec) -> Result<RingElement, CliError> {
        if let Some(v) = &lit.var {
            if ring.is_field() || ring.var() != v {
                return Err(self.invalid(format!("variable `{v}` does not belong to {ring}")));
            }
        }
        let e = RingElement::from_terms(lit.terms.iter().map(|&(k, n, d)| (k, ratio(n, d))));
        if !ring.contains(&e) {
            return Err(self.invalid(format!("{} is not in {ring}", e.fmt_with_var(lit.var.as_deref().unwrap_or("x")))));
        }
        Ok(e)
    }

    /// An r × c matrix; `[]` stands for the zero matrix of that shape.
    fn matrix(&self, lit: &MatrixLit, ring: &RingSpec, rows: usize, cols: usize) -> Result<RingMatrix, CliError> {
        if lit.is_empty() {
            return Ok(RingMatrix::zeros(ring.clone(), rows, cols));
        }
        if lit.len() != rows || lit.iter().any(|r| r.len() != cols) {
            let got_cols = lit.first().map_or(0, Vec::len);
            return Err(self.invalid(format!("matrix has shape {}x{got_cols}, expected {rows}x{cols}", lit.len())));
        }
        let rows = lit
            .iter()
            .map(|r| r.iter().map(|e| self.element(e, ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RingMatrix::from_rows(ring.clone(), rows))
    }
}
