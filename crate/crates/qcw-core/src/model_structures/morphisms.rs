//! Factorizations, morphism classes, homotopy, suspension and homotopy hom-spaces
//! of the model structure attached to a Hovey triple.

use num_traits::One;

use super::triple::HoveyTriple;
use crate::error::{Error, Result};
use crate::exact_arith::{QMat, Rational};
use crate::homotopy_algebra::lifting::{extend_along_mono, lift_through_epi};
use crate::homotopy_algebra::quiver::{factor_through_epi, factor_through_mono};
use crate::homotopy_algebra::{
    cokernel, hom_basis, kernel, pushout, sum_maps, Conflation, CotorsionPair, Mor, ObjectClass, Rep,
};

/// Which weak factorization system to factor through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// A cofibration followed by a trivial fibration.
    CofTFib,
    /// A trivial cofibration followed by a fibration.
    TCofFib,
}

/// h = right ∘ left, with the cokernel of `left` and the kernel of `right` recorded.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub which: Which,
    pub left: Mor,
    pub right: Mor,
    pub left_cokernel: Rep,
    pub right_kernel: Rep,
}

impl Factorization {
    pub fn middle(&self) -> &Rep {
        &self.left.target
    }
}

fn budget_error(e: Error) -> Error {
    match e {
        Error::BudgetExceeded { .. } => Error::FactorizationBudgetExceeded,
        other => other,
    }
}

fn pair_for(triple: &HoveyTriple, which: Which) -> &CotorsionPair {
    match which {
        Which::CofTFib => &triple.cofibrant_pair,
        Which::TCofFib => &triple.fibrant_pair,
    }
}

/// Inflation case: pull the left approximation of coker h back along Y -> coker h.
fn factor_inflation(pair: &CotorsionPair, h: &Mor, budget: usize) -> Result<(Mor, Mor)> {
    let (_, to_coker) = cokernel(h);
    let approx = pair.left_approximation(&to_coker.target, budget).map_err(budget_error)?;
    let minus = approx.deflation.scale(&-Rational::one());
    let (_, inc) = kernel(&to_coker.hjoin(&minus));
    let (_, _, to_y, _) = sum_maps(&h.target, approx.middle());
    let g = inc.then(&to_y);
    let f = factor_through_mono(&inc, &h.vjoin(&Mor::zero(&h.source, approx.middle())))
        .expect("(h, 0) lands in the pullback");
    Ok((f, g))
}

/// Deflation case: push X out along the right approximation of ker h.
fn factor_deflation(pair: &CotorsionPair, h: &Mor, budget: usize) -> Result<(Mor, Mor)> {
    let (_, inc) = kernel(h);
    let approx = pair.right_approximation(&inc.source, budget).map_err(budget_error)?;
    let po = pushout(&inc, &approx.inflation);
    let joint = h.hjoin(&Mor::zero(approx.middle(), &h.target));
    let g = factor_through_epi(&po.projection, &joint).expect("(h, 0) vanishes on ker h");
    Ok((po.from_left, g))
}

/// The two-step construction through the graph X -> X ⊕ Y -> Y, valid for any h.
fn factor_through_graph(pair: &CotorsionPair, h: &Mor, budget: usize) -> Result<(Mor, Mor)> {
    let (x, y) = (&h.source, &h.target);
    let (inc_x, _, _, _) = sum_maps(x, y);
    let (f1, g1) = factor_inflation(pair, &inc_x, budget)?;
    let onto = g1.then(&h.hjoin(&Mor::identity(y)));
    let (f2, g2) = factor_deflation(pair, &onto, budget)?;
    Ok((f1.then(&f2), g2))
}

fn finish(pair: &CotorsionPair, which: Which, h: &Mor, (left, right): (Mor, Mor)) -> Result<Factorization> {
    debug_assert!(left.then(&right) == *h);
    let left_cokernel = cokernel(&left).0;
    let right_kernel = kernel(&right).0;
    let ok = left.is_mono()
        && right.is_epi()
        && pair.left.contains(&left_cokernel)
        && pair.right.contains(&right_kernel)
        && left.then(&right) == *h;
    if !ok {
        return Err(Error::Invalid(format!("factorization left the classes of {}", pair.left.name)));
    }
    Ok(Factorization { which, left, right, left_cokernel, right_kernel })
}

/// Factors h as a left-class map followed by a right-class map. Inputs already
/// in the left (right) class come back with an identity on the other side.
pub fn factorize(h: &Mor, triple: &HoveyTriple, which: Which) -> Result<Factorization> {
    let pair = pair_for(triple, which);
    let parts = if h.is_mono() && pair.left.contains(&cokernel(h).0) {
        (h.clone(), Mor::identity(&h.target))
    } else if h.is_epi() && pair.right.contains(&kernel(h).0) {
        (Mor::identity(&h.source), h.clone())
    } else if h.is_mono() {
        factor_inflation(pair, h, triple.budget)?
    } else if h.is_epi() {
        factor_deflation(pair, h, triple.budget)?
    } else {
        factor_through_graph(pair, h, triple.budget)?
    };
    finish(pair, which, h, parts)
}

/// The graph construction regardless of the shape of h.
pub fn factorize_through_graph(h: &Mor, triple: &HoveyTriple, which: Which) -> Result<Factorization> {
    let pair = pair_for(triple, which);
    let parts = factor_through_graph(pair, h, triple.budget)?;
    finish(pair, which, h, parts)
}

#[derive(Clone, Debug)]
pub struct MorphismClassification {
    pub cofibration: bool,
    pub trivial_cofibration: bool,
    pub fibration: bool,
    pub trivial_fibration: bool,
    pub weak_equivalence: bool,
    /// Present when h is mono.
    pub cokernel: Option<Rep>,
    /// Present when h is epi.
    pub kernel: Option<Rep>,
    /// The (cofibration, trivial fibration) factorization deciding weak equivalence.
    pub factorization: Factorization,
}

fn member(class: &ObjectClass, x: &Option<Rep>) -> bool {
    x.as_ref().is_some_and(|x| class.contains(x))
}

pub fn classify(h: &Mor, triple: &HoveyTriple) -> Result<MorphismClassification> {
    let cokernel = h.is_mono().then(|| cokernel(h).0);
    let kernel = h.is_epi().then(|| kernel(h).0);
    let factorization = factorize(h, triple, Which::CofTFib)?;
    // h is a weak equivalence iff its cofibration part is trivial
    let weak_equivalence = triple.trivial.contains(&factorization.left_cokernel);
    Ok(MorphismClassification {
        cofibration: member(&triple.cofibrant, &cokernel),
        trivial_cofibration: member(triple.trivially_cofibrant(), &cokernel),
        fibration: member(&triple.fibrant, &kernel),
        trivial_fibration: member(triple.trivially_fibrant(), &kernel),
        weak_equivalence,
        cokernel,
        kernel,
        factorization,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyRelation {
    Left,
    Right,
    Both,
    Neither,
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub relation: HomotopyRelation,
    /// X -> A^Y lifting f − g along the (C∩W, F)-approximation A^Y -> Y.
    pub right_witness: Option<Mor>,
    /// B_X -> Y extending f − g along the (C, W∩F)-approximation X -> B_X.
    pub left_witness: Option<Mor>,
}

pub fn homotopic(f: &Mor, g: &Mor, triple: &HoveyTriple) -> Result<HomotopyReport> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::TypeMismatch("homotopy needs parallel maps".into()));
    }
    let diff = f.sub(g);
    let cover = triple.fibrant_pair.left_approximation(&f.target, triple.budget).map_err(budget_error)?;
    let right_witness = lift_through_epi(&cover.deflation, &diff);
    let envelope = triple.cofibrant_pair.right_approximation(&f.source, triple.budget).map_err(budget_error)?;
    let left_witness = extend_along_mono(&envelope.inflation, &diff);
    let relation = match (left_witness.is_some(), right_witness.is_some()) {
        (true, true) => HomotopyRelation::Both,
        (true, false) => HomotopyRelation::Left,
        (false, true) => HomotopyRelation::Right,
        (false, false) => HomotopyRelation::Neither,
    };
    Ok(HomotopyReport { relation, right_witness, left_witness })
}

/// ΣX = A_X from the (C, W∩F)-approximation X -> B_X -> A_X, with that conflation.
pub fn suspension(x: &Rep, triple: &HoveyTriple) -> Result<Conflation> {
    triple.cofibrant_pair.right_approximation(x, triple.budget).map_err(budget_error)
}

/// X -u-> Y -v-> Z -w-> ΣX, where Z is the pushout of u and X -> B_X.
#[derive(Clone, Debug)]
pub struct CofiberSequence {
    pub u: Mor,
    pub v: Mor,
    pub w: Mor,
    /// X -> B_X -> ΣX.
    pub suspension: Conflation,
    /// Y -> Z -> ΣX.
    pub cofiber: Conflation,
}

impl CofiberSequence {
    pub fn cone(&self) -> &Rep {
        &self.v.target
    }

    pub fn suspended(&self) -> &Rep {
        &self.w.target
    }

    pub fn is_valid(&self) -> bool {
        self.suspension.is_exact() && self.cofiber.is_exact() && self.u.then(&self.v).then(&self.w).is_zero()
    }
}

pub fn cofiber_sequence(u: &Mor, triple: &HoveyTriple) -> Result<CofiberSequence> {
    let suspension = suspension(&u.source, triple)?;
    let po = pushout(&suspension.inflation, u);
    let joint = suspension.deflation.hjoin(&Mor::zero(&u.target, suspension.right()));
    let w = factor_through_epi(&po.projection, &joint).expect("(π, 0) vanishes on the pushout relations");
    let v = po.from_right;
    let cofiber = Conflation::new(v.clone(), w.clone());
    if !cofiber.is_exact() {
        return Err(Error::Invalid("pushout row is not a conflation".into()));
    }
    Ok(CofiberSequence { u: u.clone(), v, w, suspension, cofiber })
}

/// Hom(CX, FY) modulo maps lifting along A^{FY} -> FY.
#[derive(Clone, Debug)]
pub struct HomotopyHom {
    /// CX -> X, a trivial fibration with CX cofibrant.
    pub cofibrant_replacement: Mor,
    /// Y -> FY, a trivial cofibration with FY fibrant.
    pub fibrant_replacement: Mor,
    pub hom_dim: usize,
    pub null_dim: usize,
    /// Maps CX -> FY whose classes form a basis of the quotient.
    pub classes: Vec<Mor>,
}

impl HomotopyHom {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }
}

pub fn homotopy_hom(x: &Rep, y: &Rep, triple: &HoveyTriple) -> Result<HomotopyHom> {
    let q = x.quiver.clone();
    let zero = Rep::zero(&q);
    let cofibrant_replacement = factorize(&Mor::zero(&zero, x), triple, Which::CofTFib)?.right;
    let fibrant_replacement = factorize(&Mor::zero(y, &zero), triple, Which::TCofFib)?.left;
    let (cx, fy) = (&cofibrant_replacement.source, &fibrant_replacement.target);
    let cover = triple.fibrant_pair.left_approximation(fy, triple.budget).map_err(budget_error)?;
    let basis = hom_basis(cx, fy);
    let null: Vec<Vec<Rational>> =
        hom_basis(cx, cover.middle()).iter().map(|m| m.then(&cover.deflation).to_vec()).collect();
    let len: usize = cx.dims.iter().zip(&fy.dims).map(|(a, b)| a * b).sum();
    let null_dim = QMat::from_columns(len, &null).rank();
    let mut all = null.clone();
    all.extend(basis.iter().map(Mor::to_vec));
    let (_, pivots) = QMat::from_columns(len, &all).rref();
    let classes = pivots.into_iter().filter(|&p| p >= null.len()).map(|p| basis[p - null.len()].clone()).collect();
    Ok(HomotopyHom { hom_dim: basis.len(), null_dim, cofibrant_replacement, fibrant_replacement, classes })
}
