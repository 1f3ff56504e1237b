//! Generating inflations, the finite small object argument and filtrations.

use std::sync::Arc;

use itertools::Itertools;

use super::ext::{generator_morphism, Conflation};
use super::lifting::square_space;
use super::quiver::{
    cokernel, factor_through_mono, find_mono, hom_basis, image, is_isomorphic, pullback, pushout, BoundQuiver, Mor, Rep,
};
use crate::error::{Error, Result};
use crate::exact_arith::QMat;

pub const DEFAULT_BUDGET: usize = 32;

/// How many subsets of the Hom(G, S) basis are examined before only the full basis is added.
const SUBSET_CAP: usize = 64;

/// An inflation k_I: K_I -> G^(I) with cokernel the object it was generated from.
#[derive(Clone, Debug)]
pub struct GeneratingMember {
    pub conflation: Conflation,
    /// Basis indices of Hom(G, S) used by p_I.
    pub subset: Vec<usize>,
}

impl GeneratingMember {
    pub fn inflation(&self) -> &Mor {
        &self.conflation.inflation
    }
}

#[derive(Clone, Debug, Default)]
pub struct GeneratingInflations {
    pub members: Vec<GeneratingMember>,
}

impl GeneratingInflations {
    /// Explicit inflations; each cokernel is computed.
    pub fn from_inflations(inflations: Vec<Mor>) -> Result<Self> {
        let members = inflations
            .into_iter()
            .map(|f| {
                if !f.is_valid() || !f.is_mono() {
                    return Err(Error::Invalid("generating maps must be inflations".into()));
                }
                Ok(GeneratingMember { conflation: Conflation::from_inflation(&f), subset: Vec::new() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { members })
    }

    pub fn union(sets: impl IntoIterator<Item = GeneratingInflations>) -> Self {
        Self { members: sets.into_iter().flat_map(|s| s.members).collect() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.members.iter().all(|m| m.conflation.is_exact())
    }
}

/// Subsets of 0..n by increasing size, lexicographic within a size.
fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| (0..n).combinations(k))
}

/// Generating inflations for S with respect to the generator ⊕_v P_v. The
/// basis of Hom(G, S) is e_(v,k) ↦ k-th basis vector of S_v, ordered by
/// (vertex, index); p_I is the induced map ⊕_{(v,k) ∈ I} P_v -> S.
pub fn generating_inflations(s: &Rep) -> GeneratingInflations {
    let q = &s.quiver;
    let basis: Vec<(usize, Mor)> = (0..q.len())
        .flat_map(|v| {
            let pv = Rep::projective(q, v);
            (0..s.dims[v]).map(move |k| (v, generator_morphism(&pv, v, s, k))).collect::<Vec<_>>()
        })
        .collect();
    let maps: Vec<Mor> = basis.into_iter().map(|(_, m)| m).collect();
    inflations_from_basis(q, s, &maps)
}

/// Generating inflations for S with an explicit generator G; p_I: G^(I) -> S.
pub fn generating_inflations_with(generator: &Rep, s: &Rep) -> GeneratingInflations {
    inflations_from_basis(&s.quiver, s, &hom_basis(generator, s))
}

fn inflations_from_basis(q: &Arc<BoundQuiver>, s: &Rep, basis: &[Mor]) -> GeneratingInflations {
    let n = basis.len();
    let mut members = Vec::new();
    let mut full_seen = false;
    let add = |subset: Vec<usize>, members: &mut Vec<GeneratingMember>| {
        let p = subset.iter().fold(Mor::zero(&Rep::zero(q), s), |acc, &i| acc.hjoin(&basis[i]));
        if p.is_epi() {
            members.push(GeneratingMember { conflation: Conflation::from_deflation(&p), subset });
        }
    };
    for subset in subsets_by_size(n).take(SUBSET_CAP) {
        full_seen |= subset.len() == n;
        add(subset, &mut members);
    }
    if !full_seen {
        add((0..n).collect(), &mut members);
    }
    GeneratingInflations { members }
}

/// One round of cell attachment: Z_j -> Z_{j+1} is the pushout of the
/// coproduct of generators along the attaching map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellStep {
    /// Indices of the generating members, one per attached cell.
    pub cells: Vec<usize>,
    pub coproduct: Mor,
    pub attaching: Mor,
    pub pushout: Mor,
    pub cell_map: Mor,
}

/// A finite relative cell complex X = Z_0 -> Z_1 -> ... -> Z_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ICellRecord {
    pub start: Rep,
    pub steps: Vec<CellStep>,
    pub composite: Mor,
}

impl ICellRecord {
    pub fn empty(start: &Rep) -> Self {
        Self { start: start.clone(), steps: Vec::new(), composite: Mor::identity(start) }
    }

    pub fn end(&self) -> &Rep {
        &self.composite.target
    }

    /// Recomputes every pushout from the generators and compares with the record.
    pub fn replay(&self, gens: &GeneratingInflations) -> bool {
        let mut composite = Mor::identity(&self.start);
        for step in &self.steps {
            let Some(coproduct) = coproduct_of(&self.start.quiver, gens, &step.cells) else {
                return false;
            };
            if coproduct != step.coproduct || step.attaching.target != composite.target {
                return false;
            }
            let po = pushout(&step.coproduct, &step.attaching);
            if po.from_right != step.pushout || po.from_left != step.cell_map {
                return false;
            }
            composite = composite.then(&po.from_right);
        }
        composite == self.composite
    }

    /// The cokernel of the composite filtered by the cokernels of the attached generators.
    pub fn filtration(&self, gens: &GeneratingInflations) -> Filtration {
        let (top, to_top) = cokernel(&self.composite);
        // maps of each Z_j into the final object
        let mut into_end = vec![Mor::identity(self.end())];
        for step in self.steps.iter().rev() {
            let next = step.pushout.then(into_end.last().expect("nonempty"));
            into_end.push(next);
        }
        into_end.reverse();
        let mut embeddings = vec![Mor::zero(&Rep::zero(&top.quiver), &top)];
        let mut labels = Vec::new();
        for (j, step) in self.steps.iter().enumerate() {
            let base = into_end[j].then(&to_top);
            let cells_to_top = step.cell_map.then(&into_end[j + 1]).then(&to_top);
            let parts: Vec<Rep> = step.cells.iter().map(|&c| gens.members[c].inflation().target.clone()).collect();
            let injections = summand_injections(&top.quiver, &parts);
            let mut joint = base;
            for (k, inj) in injections.iter().enumerate() {
                joint = joint.hjoin(&inj.then(&cells_to_top));
                embeddings.push(image(&joint).1);
                labels.push(gens.members[step.cells[k]].conflation.right().clone());
            }
        }
        Filtration::from_embeddings(&top, embeddings, labels)
    }
}

/// Block injections of the summands of `parts` into their direct sum.
pub(crate) fn summand_injections(quiver: &Arc<BoundQuiver>, parts: &[Rep]) -> Vec<Mor> {
    let total = Rep::sum_of(quiver, parts);
    let mut offsets = vec![0usize; quiver.len()];
    parts
        .iter()
        .map(|p| {
            let comps = (0..quiver.len())
                .map(|v| {
                    let mut m = QMat::zeros(total.dims[v], p.dims[v]);
                    m.set_block(offsets[v], 0, &QMat::identity(p.dims[v]));
                    offsets[v] += p.dims[v];
                    m
                })
                .collect();
            Mor { source: p.clone(), target: total.clone(), comps }
        })
        .collect()
}

fn coproduct_of(quiver: &Arc<BoundQuiver>, gens: &GeneratingInflations, cells: &[usize]) -> Option<Mor> {
    let zero = Rep::zero(quiver);
    cells.iter().try_fold(Mor::zero(&zero, &zero), |acc, &c| Some(acc.direct_sum(gens.members.get(c)?.inflation())))
}

/// Output of the small object argument: h = record.composite then `right`.
#[derive(Clone, Debug)]
pub struct CellFactorization {
    pub record: ICellRecord,
    pub right: Mor,
}

/// Factors h as a relative cell complex followed by a map with the right
/// lifting property against every generator. Each round attaches one cell
/// per square in a complement of the liftable squares.
pub fn small_object_factorize(gens: &GeneratingInflations, h: &Mor, budget: usize) -> Result<CellFactorization> {
    if budget == 0 {
        return Err(Error::Invalid("budget must be at least 1".into()));
    }
    let quiver = h.source.quiver.clone();
    let mut record = ICellRecord::empty(&h.source);
    let mut g = h.clone();
    loop {
        let mut cells = Vec::new();
        let mut attaching = Vec::new();
        let mut bottoms = Vec::new();
        for (idx, member) in gens.members.iter().enumerate() {
            let space = square_space(member.inflation(), &g);
            for &k in &space.obstructions {
                let (u, v) = &space.squares[k];
                cells.push(idx);
                attaching.push(u.clone());
                bottoms.push(v.clone());
            }
        }
        if cells.is_empty() {
            return Ok(CellFactorization { record, right: g });
        }
        if record.steps.len() >= budget {
            return Err(Error::BudgetExceeded { budget, partial: Box::new(record) });
        }
        let coproduct = coproduct_of(&quiver, gens, &cells).expect("indices come from the generator list");
        let zero = Rep::zero(&quiver);
        let attach = attaching.iter().fold(Mor::zero(&zero, &g.source), |acc, u| acc.hjoin(u));
        let bottom = bottoms.iter().fold(Mor::zero(&zero, &g.target), |acc, v| acc.hjoin(v));
        let po = pushout(&coproduct, &attach);
        let next_g = super::quiver::factor_through_epi(&po.projection, &bottom.hjoin(&g))
            .expect("the square commutes so the pushout map exists");
        record.composite = record.composite.then(&po.from_right);
        record.steps.push(CellStep {
            cells,
            coproduct,
            attaching: attach,
            pushout: po.from_right,
            cell_map: po.from_left,
        });
        g = next_g;
    }
}

/// A finite chain of inflations 0 = X_0 -> X_1 -> ... -> X_n with labelled cokernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub objects: Vec<Rep>,
    pub steps: Vec<Mor>,
    pub labels: Vec<Rep>,
}

impl Filtration {
    pub fn zero(quiver: &Arc<BoundQuiver>) -> Self {
        Self { objects: vec![Rep::zero(quiver)], steps: Vec::new(), labels: Vec::new() }
    }

    pub fn top(&self) -> &Rep {
        self.objects.last().expect("a filtration has at least one object")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Builds a filtration from an increasing chain of subobjects of `top`,
    /// the first zero and the last all of `top`.
    fn from_embeddings(top: &Rep, embeddings: Vec<Mor>, labels: Vec<Rep>) -> Self {
        let mut objects: Vec<Rep> = embeddings.iter().map(|e| e.source.clone()).collect();
        let mut steps: Vec<Mor> = embeddings
            .windows(2)
            .map(|w| factor_through_mono(&w[1], &w[0]).expect("the chain is increasing"))
            .collect();
        let last = embeddings.last().expect("nonempty chain");
        if let Some(step) = steps.last_mut() {
            *step = step.then(last);
            *objects.last_mut().expect("nonempty") = top.clone();
        }
        Self { objects, steps, labels }
    }

    /// X_0 = 0, every step a monomorphism, and every cokernel isomorphic to its label.
    pub fn validate(&self) -> bool {
        if !self.objects[0].is_zero()
            || self.steps.len() + 1 != self.objects.len()
            || self.labels.len() != self.steps.len()
        {
            return false;
        }
        self.steps.iter().enumerate().all(|(k, f)| {
            f.source == self.objects[k]
                && f.target == self.objects[k + 1]
                && f.is_valid()
                && f.is_mono()
                && is_isomorphic(&cokernel(f).0, &self.labels[k])
        })
    }
}

/// A filtration of X by members of `set`, found greedily with backtracking.
pub fn find_filtration(x: &Rep, set: &[Rep]) -> Option<Filtration> {
    if x.is_zero() {
        return Some(Filtration::zero(&x.quiver));
    }
    for s in set.iter().filter(|s| !s.is_zero()) {
        let Some(m) = find_mono(s, x) else { continue };
        let (rest, to_rest) = cokernel(&m);
        let Some(inner) = find_filtration(&rest, set) else {
            continue;
        };
        // preimages in X of the inner chain
        let mut into_rest = vec![Mor::identity(inner.top())];
        for step in inner.steps.iter().rev() {
            let next = step.then(into_rest.last().expect("nonempty"));
            into_rest.push(next);
        }
        into_rest.reverse();
        let mut embeddings = vec![Mor::zero(&Rep::zero(&x.quiver), x), m.clone()];
        embeddings.extend(into_rest.iter().skip(1).map(|e| pullback(&to_rest, e).to_left));
        let mut labels = vec![s.clone()];
        labels.extend(inner.labels.iter().cloned());
        return Some(Filtration::from_embeddings(x, embeddings, labels));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FinitePoset;
    use crate::homotopy_algebra::lifting::has_rlp;

    fn chain(n: usize) -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(n)))
    }

    #[test]
    fn combinations_are_ordered() {
        let all: Vec<Vec<usize>> = subsets_by_size(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Vec::<usize>::new());
        assert_eq!(all[1], vec![0]);
        assert_eq!(all[4], vec![0, 1]);
        assert_eq!(all[7], vec![0, 1, 2]);
    }

    #[test]
    fn generating_inflations_of_s0() {
        let q = chain(2);
        let s0 = Rep::simple(&q, 0);
        let gens = generating_inflations(&s0);
        assert!(gens.is_valid());
        assert_eq!(gens.len(), 1);
        let k = gens.members[0].inflation();
        assert!(is_isomorphic(&k.source, &Rep::projective(&q, 1)));
        assert!(is_isomorphic(&k.target, &Rep::projective(&q, 0)));
        let zero = generating_inflations(&Rep::zero(&q));
        assert_eq!(zero.len(), 1);
        assert!(zero.members[0].inflation().target.is_zero());
    }

    #[test]
    fn one_step_from_zero_to_s0() {
        let q = chain(2);
        let zero = Rep::zero(&q);
        let gens = GeneratingInflations::from_inflations(vec![
            Mor::zero(&zero, &Rep::projective(&q, 0)),
            Mor::zero(&zero, &Rep::projective(&q, 1)),
        ])
        .unwrap();
        let s0 = Rep::simple(&q, 0);
        let out = small_object_factorize(&gens, &Mor::zero(&zero, &s0), DEFAULT_BUDGET).unwrap();
        assert_eq!(out.record.steps.len(), 1);
        assert!(is_isomorphic(out.record.end(), &Rep::projective(&q, 0)));
        assert!(out.record.replay(&gens));
        assert_eq!(out.record.composite.then(&out.right), Mor::zero(&zero, &s0));
        for m in &gens.members {
            assert!(has_rlp(m.inflation(), &out.right));
        }
        let filt = out.record.filtration(&gens);
        assert!(filt.validate());
        assert_eq!(filt.top(), &out.record.end().clone());
    }

    #[test]
    fn identity_needs_no_cells() {
        let q = chain(3);
        let x = Rep::projective(&q, 1);
        let gens = generating_inflations(&Rep::simple(&q, 2));
        let out = small_object_factorize(&gens, &Mor::identity(&x), 4).unwrap();
        assert!(out.record.steps.is_empty());
        assert_eq!(out.right, Mor::identity(&x));
    }

    #[test]
    fn budget_is_enforced() {
        let q = chain(2);
        let zero = Rep::zero(&q);
        let s0 = Rep::simple(&q, 0);
        let gens = GeneratingInflations::from_inflations(vec![Mor::zero(&zero, &Rep::projective(&q, 0))]).unwrap();
        let h = Mor::zero(&zero, &s0.direct_sum(&s0));
        // a single round suffices, so a budget of one step passes
        assert!(small_object_factorize(&gens, &h, 1).is_ok());
        let s1 = Rep::simple(&q, 1);
        let gens = generating_inflations(&s0);
        let to_zero = Mor::zero(&s1, &zero);
        match small_object_factorize(&gens, &to_zero, 1) {
            Ok(out) => assert!(out.record.steps.len() <= 1),
            Err(Error::BudgetExceeded { partial, .. }) => assert_eq!(partial.steps.len(), 1),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn projective_filtered_by_simples() {
        let q = chain(2);
        let p0 = Rep::projective(&q, 0);
        let set = [Rep::simple(&q, 0), Rep::simple(&q, 1)];
        let f = find_filtration(&p0, &set).unwrap();
        assert!(f.validate());
        assert_eq!(f.len(), 2);
        assert_eq!(f.labels[0], set[1]);
        assert_eq!(f.top(), &p0);
        assert!(find_filtration(&p0, &set[..1]).is_none());
    }
}
