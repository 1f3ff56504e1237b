//! Finite-dimensional representations of bound quivers over Q.
//!
//! Representations of a finite poset are representations of its Hasse quiver
//! with commutativity relations; complexes of such representations are
//! representations of a larger bound quiver (see [`BoundQuiver::complexes`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{field_module, ring_to_qmat, DiagModule, DiagMorphism, FinitePoset, RingRep};
use crate::error::{Error, Result};
use crate::exact_arith::{QMat, Rational};

/// A path as a sequence of arrows, traversed first to last.
pub type Path = Vec<usize>;

/// A linear combination of parallel paths that must act as zero.
pub type Relation = Vec<(Rational, Path)>;

/// Vertex layout of the quiver of complexes over a poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexLayout {
    pub base: FinitePoset,
    pub lo: i64,
    pub hi: i64,
    /// Number of Hasse arrows per degree; differential arrows follow them.
    pub hasse: usize,
}

impl ComplexLayout {
    pub fn vertex(&self, v: usize, n: i64) -> usize {
        (n - self.lo) as usize * self.base.len() + v
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Index of the differential arrow (v, n) -> (v, n + 1).
    pub fn d_arrow(&self, v: usize, n: i64) -> usize {
        let per_degree = self.hasse * (self.hi - self.lo + 1) as usize;
        per_degree + (n - self.lo) as usize * self.base.len() + v
    }

    /// Index of the Hasse arrow number `k` in degree n.
    pub fn hasse_arrow(&self, k: usize, n: i64) -> usize {
        (n - self.lo) as usize * self.hasse + k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    pub labels: Vec<String>,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
    pub layout: Option<ComplexLayout>,
    pub poset: Option<FinitePoset>,
}

impl BoundQuiver {
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize)>, relations: Vec<Relation>) -> Result<Self> {
        let q = Self { labels, arrows, relations, layout: None, poset: None };
        q.check()?;
        Ok(q)
    }

    fn check(&self) -> Result<()> {
        for &(s, t) in &self.arrows {
            if s >= self.len() || t >= self.len() {
                return Err(Error::Invalid("arrow endpoint out of range".into()));
            }
        }
        for rel in &self.relations {
            let ends: Vec<_> = rel.iter().map(|(_, p)| self.endpoints(p)).collect();
            if ends.iter().any(|e| e.is_none() || *e != ends[0]) {
                return Err(Error::Invalid("relation paths must be composable and parallel".into()));
            }
        }
        if self.has_cycle() {
            return Err(Error::Invalid("only acyclic quivers are supported".into()));
        }
        Ok(())
    }

    fn has_cycle(&self) -> bool {
        let n = self.len();
        let mut indeg = vec![0; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen != n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn endpoints(&self, p: &Path) -> Option<(usize, usize)> {
        let (&first, rest) = p.split_first()?;
        let mut at = self.arrows[first].1;
        for &a in rest {
            if self.arrows[a].0 != at {
                return None;
            }
            at = self.arrows[a].1;
        }
        Some((self.arrows[first].0, at))
    }

    /// Hasse quiver of a poset with all commutativity relations.
    pub fn from_poset(poset: &FinitePoset) -> Self {
        let arrows = poset.covers();
        let index: HashMap<(usize, usize), usize> = arrows.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let mut relations = Vec::new();
        for (i, j) in poset.strict_pairs() {
            let paths = poset.hasse_paths(i, j);
            let as_arrows: Vec<Path> =
                paths.iter().map(|p| p.windows(2).map(|w| index[&(w[0], w[1])]).collect()).collect();
            for other in as_arrows.iter().skip(1) {
                relations.push(vec![(Rational::one(), as_arrows[0].clone()), (-Rational::one(), other.clone())]);
            }
        }
        Self { labels: poset.labels().to_vec(), arrows, relations, layout: None, poset: Some(poset.clone()) }
    }

    /// The quiver whose representations are complexes of poset
    /// representations supported in degrees lo..=hi.
    pub fn complexes(poset: &FinitePoset, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty degree range");
        let base = Self::from_poset(poset);
        let layout = ComplexLayout { base: poset.clone(), lo, hi, hasse: base.arrows.len() };
        let mut labels = Vec::new();
        for n in lo..=hi {
            for l in poset.labels() {
                labels.push(format!("{l}@{n}"));
            }
        }
        let mut arrows = Vec::new();
        for n in lo..=hi {
            for &(s, t) in &base.arrows {
                arrows.push((layout.vertex(s, n), layout.vertex(t, n)));
            }
        }
        for n in lo..=hi {
            for v in 0..poset.len() {
                if n < hi {
                    arrows.push((layout.vertex(v, n), layout.vertex(v, n + 1)));
                } else {
                    // placeholder slots keep arrow indices regular; never used
                    arrows.push((layout.vertex(v, n), layout.vertex(v, n)));
                }
            }
        }
        // drop the placeholder loops at the top degree
        let top_start = layout.d_arrow(0, hi);
        arrows.truncate(top_start);
        let one = Rational::one();
        let mut relations = Vec::new();
        for n in lo..=hi {
            for rel in &base.relations {
                relations.push(
                    rel.iter()
                        .map(|(c, p)| (c.clone(), p.iter().map(|&a| layout.hasse_arrow(a, n)).collect()))
                        .collect(),
                );
            }
        }
        for n in lo..hi {
            for (k, &(s, t)) in base.arrows.iter().enumerate() {
                relations.push(vec![
                    (one.clone(), vec![layout.hasse_arrow(k, n), layout.d_arrow(t, n)]),
                    (-one.clone(), vec![layout.d_arrow(s, n), layout.hasse_arrow(k, n + 1)]),
                ]);
            }
        }
        for n in lo..hi - 1 {
            for v in 0..poset.len() {
                relations.push(vec![(one.clone(), vec![layout.d_arrow(v, n), layout.d_arrow(v, n + 1)])]);
            }
        }
        let q = Self { labels, arrows, relations, layout: Some(layout), poset: None };
        debug_assert!(q.check().is_ok());
        q
    }

    pub fn opposite(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            relations: self
                .relations
                .iter()
                .map(|rel| rel.iter().map(|(c, p)| (c.clone(), p.iter().rev().copied().collect())).collect())
                .collect(),
            layout: None,
            poset: None,
        }
    }

    /// All paths starting at v, grouped by endpoint; the trivial path is empty.
    fn paths_from(&self, v: usize) -> Vec<Vec<Path>> {
        let mut out = vec![Vec::new(); self.len()];
        let mut stack = vec![(v, Vec::new())];
        while let Some((at, path)) = stack.pop() {
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                if s == at {
                    let mut next = path.clone();
                    next.push(a);
                    stack.push((t, next));
                }
            }
            out[at].push(path);
        }
        for list in &mut out {
            list.sort();
        }
        out
    }
}

/// A finite-dimensional representation: a vector space per vertex and a
/// matrix per arrow (target dim x source dim).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    pub quiver: Arc<BoundQuiver>,
    pub dims: Vec<usize>,
    pub maps: Vec<QMat>,
}

impl Rep {
    pub fn new(quiver: Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<QMat>) -> Result<Self> {
        let r = Self { quiver, dims, maps };
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<()> {
        let q = &self.quiver;
        if self.dims.len() != q.len() || self.maps.len() != q.arrows.len() {
            return Err(Error::Invalid("representation shape does not match the quiver".into()));
        }
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            if self.maps[a].rows() != self.dims[t] || self.maps[a].cols() != self.dims[s] {
                return Err(Error::TypeMismatch(format!("arrow {a} has the wrong matrix shape")));
            }
        }
        for (k, rel) in q.relations.iter().enumerate() {
            if !self.eval_relation(rel).is_zero() {
                return Err(Error::Invalid(format!("relation {k} does not hold")));
            }
        }
        Ok(())
    }

    pub fn zero(quiver: &Arc<BoundQuiver>) -> Self {
        let maps = quiver.arrows.iter().map(|_| QMat::zeros(0, 0)).collect();
        Self { quiver: quiver.clone(), dims: vec![0; quiver.len()], maps }
    }

    pub fn simple(quiver: &Arc<BoundQuiver>, v: usize) -> Self {
        let dims: Vec<usize> = (0..quiver.len()).map(|w| usize::from(w == v)).collect();
        let maps = quiver.arrows.iter().map(|&(s, t)| QMat::zeros(dims[t], dims[s])).collect();
        Self { quiver: quiver.clone(), dims, maps }
    }

    /// The indecomposable projective at v: paths from v modulo relations.
    pub fn projective(quiver: &Arc<BoundQuiver>, v: usize) -> Self {
        let paths = quiver.paths_from(v);
        let n = quiver.len();
        let index: Vec<HashMap<Path, usize>> =
            paths.iter().map(|ps| ps.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect()).collect();
        // relation subspaces per endpoint
        let mut rel_vectors: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n];
        for rel in &quiver.relations {
            let (s, t) = quiver.endpoints(&rel[0].1).expect("checked relation");
            let tails = quiver.paths_from(t);
            for prefix in &paths[s] {
                for (w, tail_list) in tails.iter().enumerate() {
                    for tail in tail_list {
                        let mut vec = vec![Rational::zero(); paths[w].len()];
                        for (c, p) in rel {
                            let full: Path = prefix.iter().chain(p).chain(tail).copied().collect();
                            vec[index[w][&full]] += c;
                        }
                        if vec.iter().any(|x| !x.is_zero()) {
                            rel_vectors[w].push(vec);
                        }
                    }
                }
            }
        }
        // choose path representatives and the projection onto them
        let mut projections = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(n);
        for w in 0..n {
            let m = paths[w].len();
            let rels = QMat::from_columns(m, &rel_vectors[w]).column_basis();
            let chosen = rels.complement_indices();
            let basis = rels.hstack(&QMat::from_fn(m, chosen.len(), |r, c| unit(r == chosen[c])));
            let coords = basis.inverse().expect("relation span plus complement is a basis");
            let proj = coords.select_rows(&(rels.cols()..m).collect::<Vec<_>>());
            dims.push(chosen.len());
            projections.push((chosen, proj));
        }
        let maps = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let (chosen_s, _) = &projections[s];
                let (_, proj_t) = &projections[t];
                let mut m = QMat::zeros(dims[t], dims[s]);
                for (c, &pi) in chosen_s.iter().enumerate() {
                    let mut ext = paths[s][pi].clone();
                    ext.push(a);
                    let col = index[t][&ext];
                    for r in 0..dims[t] {
                        m.set(r, c, proj_t.get(r, col).clone());
                    }
                }
                m
            })
            .collect();
        Self { quiver: quiver.clone(), dims, maps }
    }

    /// The indecomposable injective at v, dual to the projective of the opposite quiver.
    pub fn injective(quiver: &Arc<BoundQuiver>, v: usize) -> Self {
        let op = Arc::new(quiver.opposite());
        let p = Self::projective(&op, v);
        Self { quiver: quiver.clone(), dims: p.dims, maps: p.maps.iter().map(QMat::transpose).collect() }
    }

    /// The representation of the opposite quiver on dual spaces.
    pub fn dual(&self, opposite: &Arc<BoundQuiver>) -> Self {
        Self {
            quiver: opposite.clone(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(QMat::transpose).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of a nonempty path.
    pub fn path_matrix(&self, p: &[usize]) -> QMat {
        let mut m = self.maps[p[0]].clone();
        for &a in &p[1..] {
            m = self.maps[a].mul(&m);
        }
        m
    }

    fn eval_relation(&self, rel: &Relation) -> QMat {
        let (s, t) = self.quiver.endpoints(&rel[0].1).expect("checked relation");
        let mut acc = QMat::zeros(self.dims[t], self.dims[s]);
        for (c, p) in rel {
            acc = acc.add(&self.path_matrix(p).scale(c));
        }
        acc
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        Rep {
            quiver: self.quiver.clone(),
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect(),
        }
    }

    pub fn sum_of(quiver: &Arc<BoundQuiver>, parts: &[Rep]) -> Rep {
        parts.iter().fold(Rep::zero(quiver), |acc, p| acc.direct_sum(p))
    }

    /// Socle dimension per vertex: vectors killed by every outgoing arrow.
    pub fn socle_dims(&self) -> Vec<usize> {
        (0..self.quiver.len())
            .map(|v| {
                let outgoing: Vec<&QMat> = self
                    .quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.0 == v)
                    .map(|(a, _)| &self.maps[a])
                    .collect();
                let stacked = outgoing.iter().fold(QMat::zeros(0, self.dims[v]), |acc, m| acc.vstack(m));
                self.dims[v] - stacked.rank()
            })
            .collect()
    }

    /// Top dimension per vertex: the cokernel of all incoming arrows.
    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.quiver.len())
            .map(|v| {
                let incoming: Vec<&QMat> = self
                    .quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.1 == v)
                    .map(|(a, _)| &self.maps[a])
                    .collect();
                let stacked = incoming.iter().fold(QMat::zeros(self.dims[v], 0), |acc, m| acc.hstack(m));
                self.dims[v] - stacked.rank()
            })
            .collect()
    }

    pub fn is_projective(&self) -> bool {
        let tops = self.top_dims();
        let cover = projective_sum(&self.quiver, &tops);
        cover.dims == self.dims && is_isomorphic(&cover, self)
    }

    pub fn is_injective(&self) -> bool {
        let socle = self.socle_dims();
        let hull = injective_sum(&self.quiver, &socle);
        hull.dims == self.dims && is_isomorphic(&hull, self)
    }

    /// Converts a module over a constant field diagram on the same poset;
    /// vertex modules with relations become the quotient spaces.
    pub fn from_diag(quiver: &Arc<BoundQuiver>, m: &DiagModule) -> Result<Rep> {
        let coords = quotient_coordinates(quiver, m)?;
        let dims = coords.iter().map(|(p, _)| p.rows()).collect();
        let maps = quiver
            .arrows
            .iter()
            .map(|&(s, t)| coords[t].0.mul(&ring_to_qmat(&m.transition(s, t))).mul(&coords[s].1))
            .collect();
        Rep::new(quiver.clone(), dims, maps)
    }

    pub fn to_diag(&self, rep: &Arc<RingRep>) -> Result<DiagModule> {
        if self.quiver.poset.as_ref() != Some(&rep.poset) {
            return Err(Error::TypeMismatch("representation is not over this poset".into()));
        }
        let covers: Vec<_> = self.quiver.arrows.iter().zip(&self.maps).map(|(&e, m)| (e, m.clone())).collect();
        field_module(rep, &self.dims, &covers)
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "dims [{}]", parts.join(", "))
    }
}

fn unit(one: bool) -> Rational {
    if one {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// ⊕_v P_v^{counts[v]}, ordered by vertex.
pub fn projective_sum(quiver: &Arc<BoundQuiver>, counts: &[usize]) -> Rep {
    let parts: Vec<Rep> = counts
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_with(move || v).take(k))
        .map(|v| Rep::projective(quiver, v))
        .collect();
    Rep::sum_of(quiver, &parts)
}

pub fn injective_sum(quiver: &Arc<BoundQuiver>, counts: &[usize]) -> Rep {
    let parts: Vec<Rep> = counts
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_with(move || v).take(k))
        .map(|v| Rep::injective(quiver, v))
        .collect();
    Rep::sum_of(quiver, &parts)
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub source: Rep,
    pub target: Rep,
    pub comps: Vec<QMat>,
}

impl Mor {
    pub fn new(source: Rep, target: Rep, comps: Vec<QMat>) -> Result<Self> {
        let m = Self { source, target, comps };
        if !m.is_valid() {
            return Err(Error::Invalid("components do not form a morphism".into()));
        }
        Ok(m)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.source.quiver.len();
        if self.comps.len() != n {
            return false;
        }
        for v in 0..n {
            if self.comps[v].rows() != self.target.dims[v] || self.comps[v].cols() != self.source.dims[v] {
                return false;
            }
        }
        self.source
            .quiver
            .arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| self.target.maps[a].mul(&self.comps[s]) == self.comps[t].mul(&self.source.maps[a]))
    }

    pub fn zero(source: &Rep, target: &Rep) -> Self {
        let comps = (0..source.dims.len()).map(|v| QMat::zeros(target.dims[v], source.dims[v])).collect();
        Self { source: source.clone(), target: target.clone(), comps }
    }

    pub fn identity(x: &Rep) -> Self {
        Self { source: x.clone(), target: x.clone(), comps: x.dims.iter().map(|&d| QMat::identity(d)).collect() }
    }

    /// `after ∘ self`
    pub fn then(&self, after: &Mor) -> Mor {
        debug_assert_eq!(self.target.dims, after.source.dims);
        Mor {
            source: self.source.clone(),
            target: after.target.clone(),
            comps: self.comps.iter().zip(&after.comps).map(|(f, g)| g.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &Mor) -> Mor {
        Mor {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mor) -> Mor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Mor {
        Mor {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(QMat::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().zip(&self.source.dims).all(|(m, &d)| m.rank() == d)
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().zip(&self.target.dims).all(|(m, &d)| m.rank() == d)
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_mono()
    }

    pub fn inverse(&self) -> Option<Mor> {
        let comps = self.comps.iter().map(QMat::inverse).collect::<Option<Vec<_>>>()?;
        Some(Mor { source: self.target.clone(), target: self.source.clone(), comps })
    }

    /// Row-major concatenation of the components.
    pub fn to_vec(&self) -> Vec<Rational> {
        self.comps.iter().flat_map(|m| m.vectorize()).collect()
    }

    pub fn from_vec(source: &Rep, target: &Rep, v: &[Rational]) -> Mor {
        let mut at = 0;
        let comps = (0..source.dims.len())
            .map(|i| {
                let (r, c) = (target.dims[i], source.dims[i]);
                let m = QMat::from_vec(r, c, v[at..at + r * c].to_vec());
                at += r * c;
                m
            })
            .collect();
        Mor { source: source.clone(), target: target.clone(), comps }
    }

    /// [self, other]: X ⊕ X' -> Y.
    pub fn hjoin(&self, other: &Mor) -> Mor {
        let source = self.source.direct_sum(&other.source);
        Mor {
            source,
            target: self.target.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.hstack(b)).collect(),
        }
    }

    /// [self; other]: X -> Y ⊕ Y'.
    pub fn vjoin(&self, other: &Mor) -> Mor {
        let target = self.target.direct_sum(&other.target);
        Mor {
            source: self.source.clone(),
            target,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.vstack(b)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Mor) -> Mor {
        Mor {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.block_diag(b)).collect(),
        }
    }
}

/// Per vertex, a projection from generator coordinates onto a basis of the
/// quotient by the relations, and a section of it.
fn quotient_coordinates(quiver: &BoundQuiver, m: &DiagModule) -> Result<Vec<(QMat, QMat)>> {
    let poset = quiver.poset.as_ref().ok_or_else(|| Error::Invalid("quiver is not a poset quiver".into()))?;
    if !m.rep.is_field_constant() || &m.rep.poset != poset {
        return Err(Error::UnsupportedRing("conversion needs a constant field diagram on the same poset".into()));
    }
    Ok(m.vertices
        .iter()
        .map(|v| {
            let p = ring_to_qmat(&v.relations).left_nullspace();
            let section = p.solve(&QMat::identity(p.rows())).expect("full row rank");
            (p, section)
        })
        .collect())
}

impl Mor {
    /// Converts a morphism of modules over a constant field diagram.
    pub fn from_diag(quiver: &Arc<BoundQuiver>, f: &DiagMorphism) -> Result<Mor> {
        let source = Rep::from_diag(quiver, &f.source)?;
        let target = Rep::from_diag(quiver, &f.target)?;
        let (cs, ct) = (quotient_coordinates(quiver, &f.source)?, quotient_coordinates(quiver, &f.target)?);
        let comps = (0..quiver.len()).map(|v| ct[v].0.mul(&ring_to_qmat(&f.components[v])).mul(&cs[v].1)).collect();
        Mor::new(source, target, comps)
    }

    pub fn to_diag(&self, rep: &Arc<RingRep>) -> Result<DiagMorphism> {
        let comps = self.comps.iter().map(crate::diagram::qmat_to_ring).collect();
        DiagMorphism::new(self.source.to_diag(rep)?, self.target.to_diag(rep)?, comps)
    }
}

/// Injections and projections of X ⊕ Y.
pub fn sum_maps(x: &Rep, y: &Rep) -> (Mor, Mor, Mor, Mor) {
    let s = x.direct_sum(y);
    let n = x.dims.len();
    let mut inj = (Vec::new(), Vec::new());
    let mut proj = (Vec::new(), Vec::new());
    for v in 0..n {
        let (a, b) = (x.dims[v], y.dims[v]);
        inj.0.push(QMat::identity(a).vstack(&QMat::zeros(b, a)));
        inj.1.push(QMat::zeros(a, b).vstack(&QMat::identity(b)));
        proj.0.push(QMat::identity(a).hstack(&QMat::zeros(a, b)));
        proj.1.push(QMat::zeros(b, a).hstack(&QMat::identity(b)));
    }
    (
        Mor { source: x.clone(), target: s.clone(), comps: inj.0 },
        Mor { source: y.clone(), target: s.clone(), comps: inj.1 },
        Mor { source: s.clone(), target: x.clone(), comps: proj.0 },
        Mor { source: s, target: y.clone(), comps: proj.1 },
    )
}

/// Variable offsets of the components of a morphism X -> Y.
fn offsets(x: &Rep, y: &Rep) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(x.dims.len());
    let mut at = 0;
    for v in 0..x.dims.len() {
        offs.push(at);
        at += y.dims[v] * x.dims[v];
    }
    (offs, at)
}

/// Linear constraints cutting Hom(X, Y) out of the space of vertexwise maps.
pub fn hom_constraints(x: &Rep, y: &Rep) -> QMat {
    let (offs, total) = offsets(x, y);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (a, &(s, t)) in x.quiver.arrows.iter().enumerate() {
        let (ya, xa) = (&y.maps[a], &x.maps[a]);
        for r in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                let mut row = vec![Rational::zero(); total];
                for k in 0..y.dims[s] {
                    let coef = ya.get(r, k);
                    if !coef.is_zero() {
                        row[offs[s] + k * x.dims[s] + c] += coef;
                    }
                }
                for k in 0..x.dims[t] {
                    let coef = xa.get(k, c);
                    if !coef.is_zero() {
                        row[offs[t] + r * x.dims[t] + k] -= coef;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    QMat::from_fn(rows.len(), total, |i, j| rows[i][j].clone())
}

/// A basis of Hom(X, Y).
pub fn hom_basis(x: &Rep, y: &Rep) -> Vec<Mor> {
    let null = hom_constraints(x, y).nullspace();
    (0..null.cols()).map(|k| Mor::from_vec(x, y, &null.column(k))).collect()
}

pub fn hom_dim(x: &Rep, y: &Rep) -> usize {
    let (_, total) = offsets(x, y);
    total - hom_constraints(x, y).rank()
}

/// Random element of the span of `basis` with small integer coefficients.
pub fn generic_combination(source: &Rep, target: &Rep, basis: &[Mor], rng: &mut ChaCha8Rng) -> Mor {
    let mut acc = Mor::zero(source, target);
    for b in basis {
        let c: i64 = rng.gen_range(-97..=97);
        acc = acc.add(&b.scale(&Rational::from_integer(c.into())));
    }
    acc
}

pub(crate) fn seeded() -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(0x5eed_cafe)
}

const GENERIC_TRIES: usize = 8;

/// Isomorphism test via a random element of the hom space (seeded, exact).
pub fn is_isomorphic(x: &Rep, y: &Rep) -> bool {
    find_isomorphism(x, y).is_some()
}

pub fn find_isomorphism(x: &Rep, y: &Rep) -> Option<Mor> {
    if x.dims != y.dims {
        return None;
    }
    let basis = hom_basis(x, y);
    let mut rng = seeded();
    (0..GENERIC_TRIES).map(|_| generic_combination(x, y, &basis, &mut rng)).find(Mor::is_iso)
}

/// A split mono X -> Y with its retraction, if X is a retract of Y.
pub fn find_retract(x: &Rep, y: &Rep) -> Option<(Mor, Mor)> {
    if x.dims.iter().zip(&y.dims).any(|(a, b)| a > b) {
        return None;
    }
    let into = hom_basis(x, y);
    let back = hom_basis(y, x);
    let mut rng = seeded();
    for _ in 0..GENERIC_TRIES {
        let i = generic_combination(x, y, &into, &mut rng);
        let p = generic_combination(y, x, &back, &mut rng);
        let e = i.then(&p);
        if let Some(inv) = e.inverse() {
            return Some((i, p.then(&inv)));
        }
    }
    None
}

/// Generic monomorphism X -> Y, if one exists.
pub fn find_mono(x: &Rep, y: &Rep) -> Option<Mor> {
    let basis = hom_basis(x, y);
    let mut rng = seeded();
    (0..GENERIC_TRIES).map(|_| generic_combination(x, y, &basis, &mut rng)).find(Mor::is_mono)
}

/// Kernel object with its inclusion.
pub fn kernel(f: &Mor) -> (Rep, Mor) {
    let n: Vec<QMat> = f.comps.iter().map(QMat::nullspace).collect();
    let dims: Vec<usize> = n.iter().map(QMat::cols).collect();
    let maps = f
        .source
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| n[t].solve(&f.source.maps[a].mul(&n[s])).expect("kernel is a subrepresentation"))
        .collect();
    let k = Rep { quiver: f.source.quiver.clone(), dims, maps };
    let inc = Mor { source: k.clone(), target: f.source.clone(), comps: n };
    (k, inc)
}

/// Cokernel object with its projection.
pub fn cokernel(f: &Mor) -> (Rep, Mor) {
    let p: Vec<QMat> = f.comps.iter().map(QMat::left_nullspace).collect();
    let dims: Vec<usize> = p.iter().map(QMat::rows).collect();
    let sections: Vec<QMat> = p.iter().map(|m| m.solve(&QMat::identity(m.rows())).expect("full row rank")).collect();
    let maps = f
        .target
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| p[t].mul(&f.target.maps[a]).mul(&sections[s]))
        .collect();
    let c = Rep { quiver: f.target.quiver.clone(), dims, maps };
    let proj = Mor { source: f.target.clone(), target: c.clone(), comps: p };
    (c, proj)
}

pub fn image(f: &Mor) -> (Rep, Mor) {
    let b: Vec<QMat> = f.comps.iter().map(QMat::column_basis).collect();
    let dims: Vec<usize> = b.iter().map(QMat::cols).collect();
    let maps = f
        .target
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| b[t].solve(&f.target.maps[a].mul(&b[s])).expect("image is a subrepresentation"))
        .collect();
    let im = Rep { quiver: f.target.quiver.clone(), dims, maps };
    let inc = Mor { source: im.clone(), target: f.target.clone(), comps: b };
    (im, inc)
}

/// The unique h with h ∘ proj = g, for an epimorphism `proj` and g vanishing on its kernel.
pub fn factor_through_epi(proj: &Mor, g: &Mor) -> Option<Mor> {
    let comps = proj
        .comps
        .iter()
        .zip(&g.comps)
        .map(|(p, gv)| p.transpose().solve(&gv.transpose()).map(|h| h.transpose()))
        .collect::<Option<Vec<_>>>()?;
    let h = Mor { source: proj.target.clone(), target: g.target.clone(), comps };
    (h.is_valid() && proj.then(&h) == *g).then_some(h)
}

/// The unique h with inc ∘ h = g, for a monomorphism `inc` whose image contains that of g.
pub fn factor_through_mono(inc: &Mor, g: &Mor) -> Option<Mor> {
    let comps = inc.comps.iter().zip(&g.comps).map(|(i, gv)| i.solve(gv)).collect::<Option<Vec<_>>>()?;
    let h = Mor { source: g.source.clone(), target: inc.source.clone(), comps };
    (h.is_valid() && h.then(inc) == *g).then_some(h)
}

/// Pushout of B <- A -> C with the two maps into it.
pub struct Pushout {
    pub object: Rep,
    pub from_left: Mor,
    pub from_right: Mor,
    /// The quotient map B ⊕ C -> object.
    pub projection: Mor,
}

pub fn pushout(f: &Mor, g: &Mor) -> Pushout {
    let minus_g = g.scale(&-Rational::one());
    let (object, proj) = cokernel(&f.vjoin(&minus_g));
    let (inj_b, inj_c, _, _) = sum_maps(&f.target, &g.target);
    Pushout { from_left: inj_b.then(&proj), from_right: inj_c.then(&proj), object, projection: proj }
}

/// Pullback of B -> D <- C with its two projections.
pub struct Pullback {
    pub object: Rep,
    pub to_left: Mor,
    pub to_right: Mor,
}

pub fn pullback(f: &Mor, g: &Mor) -> Pullback {
    let minus_g = g.scale(&-Rational::one());
    let (object, inc) = kernel(&f.hjoin(&minus_g));
    let (_, _, proj_b, proj_c) = sum_maps(&f.source, &g.source);
    Pullback { to_left: inc.then(&proj_b), to_right: inc.then(&proj_c), object }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(n)))
    }

    #[test]
    fn projectives_and_injectives_of_a_chain() {
        let q = chain(3);
        assert_eq!(Rep::projective(&q, 0).dims, vec![1, 1, 1]);
        assert_eq!(Rep::projective(&q, 1).dims, vec![0, 1, 1]);
        assert_eq!(Rep::injective(&q, 1).dims, vec![1, 1, 0]);
        assert!(Rep::projective(&q, 2).is_projective());
        assert!(Rep::injective(&q, 2).is_projective());
        assert!(!Rep::simple(&q, 0).is_projective());
    }

    #[test]
    fn commutative_square() {
        let labels = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let p = FinitePoset::new(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let q = Arc::new(BoundQuiver::from_poset(&p));
        assert_eq!(q.relations.len(), 1);
        assert_eq!(Rep::projective(&q, 0).dims, vec![1, 1, 1, 1]);
        assert_eq!(Rep::injective(&q, 3).dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn complex_quiver_projectives_are_discs() {
        let q = Arc::new(BoundQuiver::complexes(&FinitePoset::chain(2), 0, 2));
        let l = q.layout.clone().unwrap();
        let p = Rep::projective(&q, l.vertex(0, 0));
        // D^0(P_0): P_0 in degrees 0 and 1
        assert_eq!(p.dims, vec![1, 1, 1, 1, 0, 0]);
        let top = Rep::projective(&q, l.vertex(1, 2));
        assert_eq!(top.dims, vec![0, 0, 0, 0, 0, 1]);
        let inj = Rep::injective(&q, l.vertex(1, 1));
        // D^0(I_1): I_1 = (Q -> Q) in degrees 0 and 1
        assert_eq!(inj.dims, vec![1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn homs_kernels_cokernels() {
        let q = chain(2);
        let p0 = Rep::projective(&q, 0);
        let p1 = Rep::projective(&q, 1);
        let s0 = Rep::simple(&q, 0);
        assert_eq!(hom_dim(&p1, &p0), 1);
        assert_eq!(hom_dim(&p0, &p1), 0);
        assert_eq!(hom_dim(&s0, &p0), 0);
        let f = hom_basis(&p1, &p0).remove(0);
        assert!(f.is_mono());
        let (c, pi) = cokernel(&f);
        assert!(is_isomorphic(&c, &s0));
        assert!(f.then(&pi).is_zero());
        let (k, _) = kernel(&pi);
        assert!(is_isomorphic(&k, &p1));
        let sum = s0.direct_sum(&Rep::simple(&q, 1));
        assert!(find_retract(&s0, &sum).is_some());
        assert!(!is_isomorphic(&sum, &p0));
    }

    #[test]
    fn pushout_of_projective_inclusion() {
        let q = chain(2);
        let p0 = Rep::projective(&q, 0);
        let p1 = Rep::projective(&q, 1);
        let f = hom_basis(&p1, &p0).remove(0);
        let to_zero = Mor::zero(&p1, &Rep::zero(&q));
        let po = pushout(&f, &to_zero);
        assert!(is_isomorphic(&po.object, &Rep::simple(&q, 0)));
        let pb = pullback(&po.from_left, &po.from_right);
        assert!(is_isomorphic(&pb.object, &p1));
    }
}
