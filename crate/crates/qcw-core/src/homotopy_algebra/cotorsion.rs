//! Object classes, cotorsion pairs, approximation sequences, the Eklof check
//! and the horseshoe construction.

use std::fmt;
use std::sync::Arc;

use super::cells::{find_filtration, generating_inflations, small_object_factorize, Filtration, GeneratingInflations};
use super::ext::{ext1, extension_from_cocycle, extn, presentation, projective_cover_map, Conflation};
use super::lifting::{combine, lift_through_epi, solve_for_morphism, solve_in_span};
use super::quiver::{
    cokernel, factor_through_epi, factor_through_mono, hom_basis, is_isomorphic, kernel, pushout, BoundQuiver, Mor, Rep,
};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;

pub type Membership = Arc<dyn Fn(&Rep) -> bool + Send + Sync>;

/// A decidable class of objects, closed under isomorphism.
#[derive(Clone)]
pub struct ObjectClass {
    pub name: String,
    test: Membership,
}

impl fmt::Debug for ObjectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObjectClass({})", self.name)
    }
}

impl ObjectClass {
    pub fn new(name: impl Into<String>, test: impl Fn(&Rep) -> bool + Send + Sync + 'static) -> Self {
        Self { name: name.into(), test: Arc::new(test) }
    }

    pub fn contains(&self, x: &Rep) -> bool {
        (self.test)(x)
    }

    pub fn all() -> Self {
        Self::new("all", |_| true)
    }

    pub fn zero() -> Self {
        Self::new("zero", Rep::is_zero)
    }

    pub fn projectives() -> Self {
        Self::new("projectives", Rep::is_projective)
    }

    pub fn injectives() -> Self {
        Self::new("injectives", Rep::is_injective)
    }

    /// {Y : Ext^1(s, Y) = 0 for all s in the set}.
    pub fn right_perp(name: impl Into<String>, set: Vec<Rep>) -> Self {
        Self::new(name, move |y| set.iter().all(|s| ext1(s, y) == 0))
    }

    /// {X : Ext^1(X, b) = 0 for all b in the set}.
    pub fn left_perp(name: impl Into<String>, set: Vec<Rep>) -> Self {
        Self::new(name, move |x| set.iter().all(|b| ext1(x, b) == 0))
    }

    /// Isomorphism closure of a finite list.
    pub fn listed(name: impl Into<String>, objects: Vec<Rep>) -> Self {
        Self::new(name, move |x| objects.iter().any(|o| is_isomorphic(o, x)))
    }

    pub fn even_dimension() -> Self {
        Self::new("even total dimension", |x| x.total_dim() % 2 == 0)
    }

    pub fn intersect(&self, other: &ObjectClass) -> Self {
        let (a, b) = (self.test.clone(), other.test.clone());
        Self { name: format!("{} ∩ {}", self.name, other.name), test: Arc::new(move |x| a(x) && b(x)) }
    }
}

/// A pair (left, right) together with the data used to compute approximations
/// and to certify maximality on finite universes.
#[derive(Clone, Debug)]
pub struct CotorsionPair {
    pub left: ObjectClass,
    pub right: ObjectClass,
    /// S with right = S^⊥; approximations are built from its generating inflations.
    pub generators: Vec<Rep>,
    /// Objects of the right class that detect non-members of the left class.
    pub right_witnesses: Vec<Rep>,
    /// Objects of the left class that detect non-members of the right class.
    pub left_witnesses: Vec<Rep>,
}

impl CotorsionPair {
    /// (projectives, all).
    pub fn projective(quiver: &Arc<BoundQuiver>) -> Self {
        let simples: Vec<Rep> = (0..quiver.len()).map(|v| Rep::simple(quiver, v)).collect();
        Self {
            left: ObjectClass::projectives(),
            right: ObjectClass::all(),
            generators: (0..quiver.len()).map(|v| Rep::projective(quiver, v)).collect(),
            right_witnesses: simples,
            left_witnesses: Vec::new(),
        }
    }

    /// (all, injectives).
    pub fn injective(quiver: &Arc<BoundQuiver>) -> Self {
        let simples: Vec<Rep> = (0..quiver.len()).map(|v| Rep::simple(quiver, v)).collect();
        Self {
            left: ObjectClass::all(),
            right: ObjectClass::injectives(),
            generators: simples.clone(),
            right_witnesses: Vec::new(),
            left_witnesses: simples,
        }
    }

    pub fn approximations(&self, x: &Rep, budget: usize) -> Result<Approximations> {
        approximation_sequences(&self.generators, x, budget)
    }

    /// X -> B_X -> A_X with B_X in the right class.
    pub fn right_approximation(&self, x: &Rep, budget: usize) -> Result<Conflation> {
        right_approximation(&self.generators, x, budget).map(|(c, _)| c)
    }

    /// B^X -> A^X -> X with A^X in the left class.
    pub fn left_approximation(&self, x: &Rep, budget: usize) -> Result<Conflation> {
        left_approximation(&self.generators, x, budget)
    }
}

/// 0 -> X -> B_X -> A_X -> 0 with B_X in S^⊥ and A_X filtered by S, and
/// 0 -> B^X -> A^X -> X -> 0 with B^X in S^⊥ and A^X in ⊥(S^⊥).
#[derive(Clone, Debug)]
pub struct Approximations {
    pub right: Conflation,
    pub filtration: Filtration,
    pub left: Conflation,
}

fn generators_of(set: &[Rep]) -> GeneratingInflations {
    GeneratingInflations::union(set.iter().map(generating_inflations))
}

/// The special right approximation of X from the small object argument on X -> 0.
pub fn right_approximation(set: &[Rep], x: &Rep, budget: usize) -> Result<(Conflation, Filtration)> {
    let gens = generators_of(set);
    let out = small_object_factorize(&gens, &Mor::zero(x, &Rep::zero(&x.quiver)), budget)?;
    let filtration = out.record.filtration(&gens);
    Ok((Conflation::from_inflation(&out.record.composite), filtration))
}

/// The special left approximation 0 -> B^X -> A^X -> X -> 0, obtained by
/// pushing the kernel of a projective cover into its right approximation.
pub fn left_approximation(set: &[Rep], x: &Rep, budget: usize) -> Result<Conflation> {
    let q = &x.quiver;
    // only the projectives used by the cover of X need to be S-filtered
    for v in (0..q.len()).filter(|&v| x.dims[v] > 0) {
        if find_filtration(&Rep::projective(q, v), set).is_none() {
            return Err(Error::GeneratorMissing);
        }
    }
    let cover = projective_cover_map(x);
    let (k, inc) = kernel(&cover);
    let (k_approx, _) = right_approximation(set, &k, budget)?;
    let po = pushout(&inc, &k_approx.inflation);
    let joint = cover.hjoin(&Mor::zero(k_approx.middle(), x));
    let deflation = factor_through_epi(&po.projection, &joint).expect("the cover vanishes on K");
    Ok(Conflation::new(po.from_right, deflation))
}

pub fn approximation_sequences(set: &[Rep], x: &Rep, budget: usize) -> Result<Approximations> {
    let left = left_approximation(set, x, budget)?;
    let (right, filtration) = right_approximation(set, x, budget)?;
    Ok(Approximations { right, filtration, left })
}

/// Mutual orthogonality and maximality of a pair on a finite universe.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub universe_size: usize,
    /// A pair (a, b) with a in the left class, b in the right class and Ext^1(a, b) ≠ 0.
    pub orthogonality_witness: Option<(Rep, Rep)>,
    /// Universe objects outside the left class with no Ext^1 into the right class.
    pub left_unwitnessed: Vec<Rep>,
    pub right_unwitnessed: Vec<Rep>,
}

impl PairReport {
    pub fn orthogonal(&self) -> bool {
        self.orthogonality_witness.is_none()
    }

    pub fn is_cotorsion_pair(&self) -> bool {
        self.orthogonal() && self.left_unwitnessed.is_empty() && self.right_unwitnessed.is_empty()
    }
}

fn in_class<'a>(class: &ObjectClass, universe: &'a [Rep], extra: &'a [Rep]) -> Vec<&'a Rep> {
    universe.iter().chain(extra).filter(|x| class.contains(x)).collect()
}

pub fn is_cotorsion_pair(pair: &CotorsionPair, universe: &[Rep]) -> PairReport {
    let lefts = in_class(&pair.left, universe, &pair.left_witnesses);
    let rights = in_class(&pair.right, universe, &pair.right_witnesses);
    let orthogonality_witness = lefts
        .iter()
        .flat_map(|a| rights.iter().map(move |b| (*a, *b)))
        .find(|(a, b)| ext1(a, b) != 0)
        .map(|(a, b)| (a.clone(), b.clone()));
    let left_unwitnessed =
        universe.iter().filter(|u| !pair.left.contains(u) && rights.iter().all(|b| ext1(u, b) == 0)).cloned().collect();
    let right_unwitnessed =
        universe.iter().filter(|u| !pair.right.contains(u) && lefts.iter().all(|a| ext1(a, u) == 0)).cloned().collect();
    PairReport { universe_size: universe.len(), orthogonality_witness, left_unwitnessed, right_unwitnessed }
}

/// Some (a, b) in the universe with Ext^2(a, b) ≠ 0, if any.
pub fn hereditary_witness(pair: &CotorsionPair, universe: &[Rep]) -> Option<(Rep, Rep)> {
    let lefts = in_class(&pair.left, universe, &pair.left_witnesses);
    let rights = in_class(&pair.right, universe, &pair.right_witnesses);
    lefts
        .iter()
        .flat_map(|a| rights.iter().map(move |b| (*a, *b)))
        .find(|(a, b)| extn(a, b, 2) != 0)
        .map(|(a, b)| (a.clone(), b.clone()))
}

pub fn is_hereditary(pair: &CotorsionPair, universe: &[Rep]) -> bool {
    hereditary_witness(pair, universe).is_none()
}

/// Whether the top of a filtration is left orthogonal to every object of
/// `b_set`, after checking that each factor is.
pub fn eklof_check(b_set: &[Rep], filtration: &Filtration) -> Result<bool> {
    for (k, label) in filtration.labels.iter().enumerate() {
        if b_set.iter().any(|b| ext1(label, b) != 0) {
            return Err(Error::FactorNotInLeftClass(k));
        }
    }
    Ok(b_set.iter().all(|b| ext1(filtration.top(), b) == 0))
}

/// The 3×3 diagram over a conflation X -> Y -> Z.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub middle: Conflation,
    pub b_row: Conflation,
    pub a_row: Conflation,
}

impl Horseshoe {
    pub fn is_exact(&self) -> bool {
        self.middle.is_exact() && self.b_row.is_exact() && self.a_row.is_exact()
    }
}

/// Completes Y -> B_Y -> A_Y from approximations of X and Z. B_Y is an
/// extension of B_Z by B_X whose pullback along Z -> B_Z is the pushout of the
/// row along X -> B_X; it exists when Ext^2(A_Z, B_X) vanishes.
pub fn horseshoe(row: &Conflation, approx_x: &Conflation, approx_z: &Conflation) -> Result<Horseshoe> {
    if approx_x.left() != row.left() || approx_z.left() != row.right() {
        return Err(Error::TypeMismatch("approximations must start at the ends of the row".into()));
    }
    let (i1, i3) = (&approx_x.inflation, &approx_z.inflation);
    let (b_x, b_z) = (approx_x.middle(), approx_z.middle());
    let pres_z = presentation(row.right());
    let pres_b = presentation(b_z);
    let not_hereditary = || Error::PairNotHereditary("the pushout class does not extend to B_Z".into());
    // α: K_Z -> K_B covering Z -> B_Z
    let phi = lift_through_epi(&pres_b.deflation, &pres_z.deflation.then(i3)).expect("F_Z is projective");
    let alpha = factor_through_mono(&pres_b.inflation, &pres_z.inflation.then(&phi)).expect("φ maps K_Z into K_B");
    // cocycle of the row pushed along X -> B_X
    let psi = lift_through_epi(&row.deflation, &pres_z.deflation).expect("F_Z is projective");
    let c = factor_through_mono(&row.inflation, &pres_z.inflation.then(&psi)).expect("ψ maps K_Z into X");
    let xi = c.then(i1);
    // η ∘ α − ρ ∘ inc = ξ
    let etas = hom_basis(pres_b.left(), b_x);
    let rhos = hom_basis(pres_z.middle(), b_x);
    let minus = Rational::from_integer((-1).into());
    let mut images: Vec<Vec<Rational>> = etas.iter().map(|e| alpha.then(e).to_vec()).collect();
    images.extend(rhos.iter().map(|r| pres_z.inflation.then(r).scale(&minus).to_vec()));
    let coeffs = solve_in_span(&images, &xi.to_vec()).ok_or_else(not_hereditary)?;
    let eta = combine(pres_b.left(), b_x, &etas, &coeffs[..etas.len()]);
    let b_row = extension_from_cocycle(&pres_b, &eta);
    // i2: Y -> B_Y restricting to i1 and covering i3
    let y = row.middle();
    let target_a = i1.then(&b_row.inflation);
    let target_b = row.deflation.then(i3);
    let rhs: Vec<Rational> = target_a.to_vec().into_iter().chain(target_b.to_vec()).collect();
    let i2 = solve_for_morphism(y, b_row.middle(), &rhs, |m| {
        row.inflation.then(m).to_vec().into_iter().chain(m.then(&b_row.deflation).to_vec()).collect()
    })
    .ok_or_else(not_hereditary)?;
    let (_, to_a_y) = cokernel(&i2);
    let middle = Conflation::new(i2, to_a_y.clone());
    let a1 = factor_through_epi(&approx_x.deflation, &b_row.inflation.then(&to_a_y)).ok_or_else(not_hereditary)?;
    let a2 = factor_through_epi(&to_a_y, &b_row.deflation.then(&approx_z.deflation)).ok_or_else(not_hereditary)?;
    let out = Horseshoe { middle, b_row, a_row: Conflation::new(a1, a2) };
    if !out.is_exact() {
        return Err(not_hereditary());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FinitePoset;
    use crate::homotopy_algebra::cells::DEFAULT_BUDGET;
    use crate::homotopy_algebra::ext::ext1_classes;

    fn chain(n: usize) -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(n)))
    }

    #[test]
    fn trivial_pairs_on_two_chain() {
        let q = chain(2);
        let (s0, s1, p0) = (Rep::simple(&q, 0), Rep::simple(&q, 1), Rep::projective(&q, 0));
        let universe = vec![s0.clone(), s1.clone(), p0.clone()];
        let inj = CotorsionPair::injective(&q);
        assert!(is_cotorsion_pair(&inj, &universe).is_cotorsion_pair());
        assert!(is_hereditary(&inj, &universe));
        let proj = CotorsionPair::projective(&q);
        assert!(is_cotorsion_pair(&proj, &universe).is_cotorsion_pair());
        let everything = CotorsionPair {
            left: ObjectClass::all(),
            right: ObjectClass::all(),
            generators: Vec::new(),
            right_witnesses: Vec::new(),
            left_witnesses: Vec::new(),
        };
        let report = is_cotorsion_pair(&everything, &universe);
        assert_eq!(report.orthogonality_witness, Some((s0, s1)));
    }

    #[test]
    fn injective_approximation_of_s1() {
        let q = chain(2);
        let s1 = Rep::simple(&q, 1);
        let pair = CotorsionPair::injective(&q);
        let approx = pair.approximations(&s1, DEFAULT_BUDGET).unwrap();
        assert!(approx.right.is_exact());
        assert!(is_isomorphic(approx.right.middle(), &Rep::projective(&q, 0)));
        assert!(is_isomorphic(approx.right.right(), &Rep::simple(&q, 0)));
        assert!(approx.filtration.validate());
        assert!(approx.left.is_exact());
        assert!(pair.right.contains(approx.left.left()));
    }

    #[test]
    fn projective_pair_approximations() {
        let q = chain(3);
        let pair = CotorsionPair::projective(&q);
        let x = Rep::simple(&q, 1);
        let approx = pair.approximations(&x, DEFAULT_BUDGET).unwrap();
        assert!(approx.left.is_exact());
        assert!(approx.left.middle().is_projective());
        assert!(approx.right.is_exact());
    }

    #[test]
    fn missing_generator() {
        let q = chain(2);
        let only_s0 = [Rep::simple(&q, 0)];
        assert!(matches!(
            approximation_sequences(&only_s0, &Rep::simple(&q, 1), DEFAULT_BUDGET),
            Err(Error::GeneratorMissing)
        ));
    }

    #[test]
    fn eklof_on_projective() {
        let q = chain(2);
        let p0 = Rep::projective(&q, 0);
        let filt = find_filtration(&p0, &[Rep::simple(&q, 1), Rep::simple(&q, 0)]).unwrap();
        assert!(eklof_check(&[p0.clone()], &filt).unwrap());
        assert!(eklof_check(&[], &filt).unwrap());
        assert!(matches!(eklof_check(&[Rep::simple(&q, 1)], &filt), Err(Error::FactorNotInLeftClass(1))));
    }

    #[test]
    fn horseshoe_on_nonsplit_row() {
        let q = chain(2);
        let (s0, s1) = (Rep::simple(&q, 0), Rep::simple(&q, 1));
        let row = ext1_classes(&s0, &s1).remove(0);
        let pair = CotorsionPair::injective(&q);
        let ax = pair.approximations(&s1, DEFAULT_BUDGET).unwrap().right;
        let az = pair.approximations(&s0, DEFAULT_BUDGET).unwrap().right;
        let h = horseshoe(&row, &ax, &az).unwrap();
        assert!(h.is_exact());
        assert!(pair.right.contains(h.b_row.middle()));
        let split = Conflation::split(&s1, &s0);
        let h = horseshoe(&split, &ax, &az).unwrap();
        assert!(h.is_exact());
        let zero = Rep::zero(&q);
        let zrow = Conflation::split(&zero, &zero);
        let za = pair.approximations(&zero, DEFAULT_BUDGET).unwrap().right;
        let h = horseshoe(&zrow, &za, &za).unwrap();
        assert!(h.b_row.middle().is_zero());
    }
}
