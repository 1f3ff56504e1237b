use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rationals; always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Which exponents a univariate Laurent-type ring admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Window {
    /// k[x]
    NonNeg,
    /// k[x^-1]
    NonPos,
    /// k[x, x^-1]
    Full,
}

impl Window {
    pub fn admits(self, exp: i64) -> bool {
        match self {
            Window::NonNeg => exp >= 0,
            Window::NonPos => exp <= 0,
            Window::Full => true,
        }
    }

    pub fn contains(self, other: Window) -> bool {
        self == other || self == Window::Full
    }

    fn flipped(self) -> Window {
        match self {
            Window::NonNeg => Window::NonPos,
            Window::NonPos => Window::NonNeg,
            Window::Full => Window::Full,
        }
    }
}

/// A subring of the bivariate Laurent ring spanned by a finitely generated
/// monoid of exponent vectors. Only used to describe ring diagrams as data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidRing {
    pub vars: [String; 2],
    pub generators: Vec<[i64; 2]>,
}

impl MonoidRing {
    /// Whether `target` is a nonnegative integer combination of the generators.
    pub fn contains_exponent(&self, target: [i64; 2]) -> bool {
        fn search(gens: &[[i64; 2]], at: usize, rest: [i64; 2], depth: usize) -> bool {
            if rest == [0, 0] {
                return true;
            }
            if at == gens.len() || depth == 0 {
                return false;
            }
            for k in 0..=depth {
                let r = [rest[0] - gens[at][0] * k as i64, rest[1] - gens[at][1] * k as i64];
                if search(gens, at + 1, r, depth - k) {
                    return true;
                }
            }
            false
        }
        let bound = (target[0].abs() + target[1].abs()) as usize * 2 + 2;
        search(&self.generators, 0, target, bound)
    }

    pub fn contains_ring(&self, other: &MonoidRing) -> bool {
        self.vars == other.vars && other.generators.iter().all(|g| self.contains_exponent(*g))
    }
}

/// The coefficient ring attached to a vertex of a ring diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Field,
    Laurent { var: String, window: Window },
    Monoid(MonoidRing),
}

impl RingSpec {
    pub fn poly(var: &str) -> Self {
        RingSpec::Laurent { var: var.to_string(), window: Window::NonNeg }
    }

    pub fn ipoly(var: &str) -> Self {
        RingSpec::Laurent { var: var.to_string(), window: Window::NonPos }
    }

    pub fn laurent(var: &str) -> Self {
        RingSpec::Laurent { var: var.to_string(), window: Window::Full }
    }

    pub fn window(&self) -> Result<Window> {
        match self {
            RingSpec::Field => Ok(Window::Full),
            RingSpec::Laurent { window, .. } => Ok(*window),
            RingSpec::Monoid(_) => Err(Error::UnsupportedRing(self.to_string())),
        }
    }

    /// Fails unless the ring is on the Euclidean whitelist.
    pub fn require_euclidean(&self) -> Result<()> {
        match self {
            RingSpec::Monoid(_) => {
                Err(Error::UnsupportedRing(format!("{self} is multivariate; module algebra over it is not available")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Field)
    }

    pub fn var(&self) -> &str {
        match self {
            RingSpec::Laurent { var, .. } => var,
            _ => "x",
        }
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        match self {
            RingSpec::Field => e.terms.keys().all(|&k| k == 0),
            RingSpec::Laurent { window, .. } => e.terms.keys().all(|&k| window.admits(k)),
            RingSpec::Monoid(_) => false,
        }
    }

    pub fn is_unit(&self, e: &RingElement) -> bool {
        match self {
            RingSpec::Field => !e.is_zero(),
            RingSpec::Laurent { window: Window::Full, .. } => e.terms.len() == 1,
            RingSpec::Laurent { .. } => e.terms.len() == 1 && e.terms.contains_key(&0),
            RingSpec::Monoid(_) => false,
        }
    }

    /// Euclidean norm of a nonzero element.
    pub fn norm(&self, e: &RingElement) -> Option<u64> {
        let (lo, hi) = (e.min_exp()?, e.max_exp()?);
        Some(match self {
            RingSpec::Field => 0,
            RingSpec::Laurent { window: Window::NonNeg, .. } => hi as u64,
            RingSpec::Laurent { window: Window::NonPos, .. } => (-lo) as u64,
            RingSpec::Laurent { window: Window::Full, .. } => (hi - lo) as u64,
            RingSpec::Monoid(_) => return None,
        })
    }

    /// Euclidean division `a = q*b + r` with `r = 0` or `norm(r) < norm(b)`.
    pub fn div_rem(&self, a: &RingElement, b: &RingElement) -> (RingElement, RingElement) {
        assert!(!b.is_zero(), "division by zero");
        match self {
            RingSpec::Field => {
                let c = b.coeff(0).clone();
                (a.scale(&c.recip()), RingElement::zero())
            }
            RingSpec::Laurent { window: Window::NonNeg, .. } => poly_div_rem(a, b),
            RingSpec::Laurent { window: Window::NonPos, .. } => {
                let (q, r) = poly_div_rem(&a.flip(), &b.flip());
                (q.flip(), r.flip())
            }
            RingSpec::Laurent { window: Window::Full, .. } => {
                if a.is_zero() {
                    return (RingElement::zero(), RingElement::zero());
                }
                let ma = a.min_exp().unwrap();
                let mb = b.min_exp().unwrap();
                let (q, r) = poly_div_rem(&a.shift(-ma), &b.shift(-mb));
                (q.shift(ma - mb), r.shift(ma))
            }
            RingSpec::Monoid(_) => panic!("division in a data-only ring"),
        }
    }

    /// `Some(a / b)` when `b` divides `a` in this ring.
    pub fn exact_div(&self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        let (q, r) = self.div_rem(a, b);
        r.is_zero().then_some(q)
    }

    /// The unit `u` such that `u * e` is the normal form of `e`.
    pub fn normalizing_unit(&self, e: &RingElement) -> RingElement {
        if e.is_zero() {
            return RingElement::one();
        }
        match self {
            RingSpec::Field => RingElement::constant(e.coeff(0).recip()),
            RingSpec::Laurent { window: Window::NonNeg, .. } => {
                RingElement::constant(e.coeff(e.max_exp().unwrap()).recip())
            }
            RingSpec::Laurent { window: Window::NonPos, .. } => {
                RingElement::constant(e.coeff(e.min_exp().unwrap()).recip())
            }
            RingSpec::Laurent { window: Window::Full, .. } => {
                let lo = e.min_exp().unwrap();
                RingElement::monomial(e.coeff(e.max_exp().unwrap()).recip(), -lo)
            }
            RingSpec::Monoid(_) => RingElement::one(),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, e: &RingElement) -> Option<RingElement> {
        if !self.is_unit(e) {
            return None;
        }
        let (&k, c) = e.terms.iter().next().unwrap();
        Some(RingElement::monomial(c.recip(), -k))
    }

    /// A Q-basis of exponents for R/(d), d nonzero.
    pub fn quotient_basis(&self, d: &RingElement) -> Vec<i64> {
        match self.norm(d) {
            None => vec![],
            Some(n) => match self {
                RingSpec::Laurent { window: Window::NonPos, .. } => (0..n as i64).map(|k| -k).collect(),
                _ => (0..n as i64).collect(),
            },
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Field => write!(f, "field"),
            RingSpec::Laurent { var, window: Window::NonNeg } => write!(f, "poly({var})"),
            RingSpec::Laurent { var, window: Window::NonPos } => write!(f, "ipoly({var})"),
            RingSpec::Laurent { var, window: Window::Full } => write!(f, "laurent({var})"),
            RingSpec::Monoid(m) => {
                write!(f, "monoid({},{};", m.vars[0], m.vars[1])?;
                for (i, g) in m.generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, " {}^{} {}^{}", m.vars[0], g[0], m.vars[1], g[1])?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A univariate Laurent polynomial with rational coefficients. Ring membership
/// is a property checked against a [`RingSpec`]; field elements are constants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    terms: BTreeMap<i64, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// x^exp
    pub fn x_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitute x -> x^-1.
    pub fn flip(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !abs.is_one() || *k == 0;
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            if *k != 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if *k != 1 {
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with_var("x"))
    }
}

/// Division in k[x]; exponents of both operands must be nonnegative.
fn poly_div_rem(a: &RingElement, b: &RingElement) -> (RingElement, RingElement) {
    let db = b.max_exp().expect("nonzero divisor");
    let lead_inv = b.coeff(db).recip();
    let mut q = RingElement::zero();
    let mut r = a.clone();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let c = r.coeff(dr) * &lead_inv;
        let t = RingElement::monomial(c, dr - db);
        r = r.sub(&t.mul(b));
        q = q.add(&t);
    }
    (q, r)
}

/// How a ring map acts; every certificate denotes a flat localization-type map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingMapKind {
    Identity,
    /// Window inclusion such as k[x] into k[x, x^-1].
    Inclusion,
    /// x -> x^-1 followed by a window inclusion.
    SwapInclusion,
    /// The structure map from the coefficient field.
    FieldUnit,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMap {
    pub source: RingSpec,
    pub target: RingSpec,
    pub kind: RingMapKind,
}

impl RingMap {
    pub fn new(source: RingSpec, target: RingSpec, kind: RingMapKind) -> Result<Self> {
        let ok = match (&source, &target, kind) {
            (s, t, RingMapKind::Identity) => s == t,
            (RingSpec::Field, _, RingMapKind::FieldUnit) => true,
            (RingSpec::Laurent { window: a, .. }, RingSpec::Laurent { window: b, .. }, RingMapKind::Inclusion) => {
                b.contains(*a)
            }
            (RingSpec::Laurent { window: a, .. }, RingSpec::Laurent { window: b, .. }, RingMapKind::SwapInclusion) => {
                b.contains(a.flipped())
            }
            (RingSpec::Monoid(a), RingSpec::Monoid(b), RingMapKind::Inclusion) => b.contains_ring(a),
            _ => false,
        };
        if !ok {
            return Err(Error::Invalid(format!("no whitelisted ring map {:?} from {source} to {target}", kind)));
        }
        Ok(Self { source, target, kind })
    }

    pub fn identity(ring: RingSpec) -> Self {
        Self { source: ring.clone(), target: ring, kind: RingMapKind::Identity }
    }

    /// Picks the canonical certificate between two rings: identity, inclusion,
    /// or the field unit.
    pub fn canonical(source: &RingSpec, target: &RingSpec) -> Result<Self> {
        if source == target {
            return Ok(Self::identity(source.clone()));
        }
        let kind = if source.is_field() { RingMapKind::FieldUnit } else { RingMapKind::Inclusion };
        Self::new(source.clone(), target.clone(), kind)
    }

    /// Exponent multiplier: +1 for inclusions, -1 for swaps, 0 for field units.
    fn sign(&self) -> i64 {
        match self.kind {
            RingMapKind::Identity | RingMapKind::Inclusion => 1,
            RingMapKind::SwapInclusion => -1,
            RingMapKind::FieldUnit => 0,
        }
    }

    pub fn apply(&self, e: &RingElement) -> RingElement {
        match self.kind {
            RingMapKind::SwapInclusion => e.flip(),
            _ => e.clone(),
        }
    }

    pub fn compose(&self, after: &RingMap) -> Result<RingMap> {
        if self.target != after.source {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, after.source, after.target
            )));
        }
        if self.source == after.target && self.sign() * after.sign() == 1 {
            return Ok(RingMap::identity(self.source.clone()));
        }
        let kind = match (self.kind, after.kind) {
            (RingMapKind::FieldUnit, _) | (_, RingMapKind::FieldUnit) => RingMapKind::FieldUnit,
            _ if self.sign() * after.sign() == -1 => RingMapKind::SwapInclusion,
            (RingMapKind::Identity, k) | (k, RingMapKind::Identity) => k,
            _ => RingMapKind::Inclusion,
        };
        RingMap::new(self.source.clone(), after.target.clone(), kind)
    }

    /// Two maps with the same endpoints agree iff they act the same way on the variable.
    pub fn same_action(&self, other: &RingMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && (self.source.is_field() || matches!(self.source, RingSpec::Monoid(_)) || self.sign() == other.sign())
    }
}
