//! Command arguments: small expressions over workspace names and builtins,
//! and the frame in which they become quiver representations.
//!
//! ```text
//! expr := NAME | NAME "(" expr ("," expr)* ")" | INT
//! ```
//!
//! Builtins: `O(n)` twists on the projective line, `S<i>`, `P<i>`, `I<i>`
//! simple, projective and injective modules over the current poset, `0`,
//! `sphere(X, n)`, `disc(X, n)`, `id(X)`, `zero(X, Y)`, `sum(X, Y)`.

use std::sync::Arc;

use qcw_core::complexes::{injective_model, BoundedComplex, ComplexCategory, ComplexMorphism};
use qcw_core::diagram::{
    direct_sum, p1_twist, projective_generator, simple, DiagModule, DiagMorphism, FinitePoset, RingRep,
};
use qcw_core::homotopy_algebra::{BoundQuiver, CotorsionPair, Mor, Rep};
use qcw_core::model_structures::HoveyTriple;

use crate::error::{CliError, Context};
use crate::workspace::{field_rep, Object, TripleKind, TripleSpec, Workspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub head: String,
    pub args: Vec<Expr>,
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.args.is_empty() {
            let parts: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Splits on commas outside parentheses.
pub fn split_top(s: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

pub fn parse_expr(s: &str) -> Result<Expr, CliError> {
    let s = s.trim();
    let bad = || CliError::usage(format!("cannot read argument `{s}`"));
    let Some(open) = s.find('(') else {
        let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        return if ok { Ok(Expr { head: s.to_string(), args: Vec::new() }) } else { Err(bad()) };
    };
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let head = s[..open].trim();
    if head.is_empty() {
        return Err(bad());
    }
    let args = split_top(inner).into_iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
    Ok(Expr { head: head.to_string(), args })
}

#[derive(Clone, Debug)]
pub enum Value {
    Module(DiagModule),
    Morphism(DiagMorphism),
    Complex(BoundedComplex),
    ChainMap(ComplexMorphism),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Module(_) => "module",
            Value::Morphism(_) => "module morphism",
            Value::Complex(_) => "complex",
            Value::ChainMap(_) => "chain map",
        }
    }

    pub fn is_complex_like(&self) -> bool {
        matches!(self, Value::Complex(_) | Value::ChainMap(_))
    }

    fn rep(&self) -> &Arc<RingRep> {
        match self {
            Value::Module(m) => &m.rep,
            Value::Morphism(f) => &f.source.rep,
            Value::Complex(x) => &x.rep,
            Value::ChainMap(f) => &f.source.rep,
        }
    }

    /// Degree span of a complex-like value.
    fn span(&self) -> Option<(i64, i64)> {
        match self {
            Value::Complex(x) => Some((x.lo, x.hi())),
            Value::ChainMap(f) => Some((f.source.lo.min(f.target.lo), f.source.hi().max(f.target.hi()))),
            _ => None,
        }
    }
}

/// Where arguments live: representations of the poset itself, or complexes
/// of them in a fixed degree window.
#[derive(Clone, Debug)]
pub enum Frame {
    Base(Arc<BoundQuiver>),
    Complexes(ComplexCategory),
}

impl Frame {
    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        match self {
            Frame::Base(q) => q,
            Frame::Complexes(cat) => &cat.quiver,
        }
    }

    pub fn category(&self) -> Option<&ComplexCategory> {
        match self {
            Frame::Complexes(cat) => Some(cat),
            Frame::Base(_) => None,
        }
    }

    pub fn rep(&self, v: &Value) -> Result<Rep, CliError> {
        let what = || format!("converting a {} to a representation", v.kind());
        match (self, v) {
            (Frame::Base(q), Value::Module(m)) => Rep::from_diag(q, m).context(what),
            (Frame::Complexes(cat), Value::Module(m)) => BoundedComplex::sphere(m, 0).to_rep(cat).context(what),
            (Frame::Complexes(cat), Value::Complex(x)) => x.to_rep(cat).context(what),
            _ => Err(CliError::usage(format!("expected an object, found a {}", v.kind()))),
        }
    }

    pub fn mor(&self, v: &Value) -> Result<Mor, CliError> {
        let what = || format!("converting a {} to a representation map", v.kind());
        match (self, v) {
            (Frame::Base(q), Value::Morphism(f)) => Mor::from_diag(q, f).context(what),
            (Frame::Complexes(cat), Value::Morphism(f)) => sphere_map(f).and_then(|g| g.to_mor(cat)).context(what),
            (Frame::Complexes(cat), Value::ChainMap(f)) => f.to_mor(cat).context(what),
            _ => Err(CliError::usage(format!("expected a morphism, found a {}", v.kind()))),
        }
    }
}

pub fn sphere_map(f: &DiagMorphism) -> qcw_core::Result<ComplexMorphism> {
    ComplexMorphism::new(BoundedComplex::sphere(&f.source, 0), BoundedComplex::sphere(&f.target, 0), vec![f.clone()])
}

pub fn as_chain_map(v: &Value) -> Result<ComplexMorphism, CliError> {
    match v {
        Value::ChainMap(f) => Ok(f.clone()),
        Value::Morphism(f) => sphere_map(f).context(|| "promoting a morphism to spheres".into()),
        other => Err(CliError::usage(format!("expected a chain map, found a {}", other.kind()))),
    }
}

/// Evaluates arguments against a workspace; `poset` resolves `S<i>`-style builtins.
pub struct Env<'a> {
    pub ws: &'a Workspace,
    pub poset_name: String,
    pub poset: FinitePoset,
    pub rep: Arc<RingRep>,
}

impl<'a> Env<'a> {
    pub fn new(ws: &'a Workspace, poset_name: &str) -> Result<Self, CliError> {
        let poset = ws.poset(poset_name).ok_or_else(|| CliError::usage(format!("unknown poset `{poset_name}`")))?;
        let rep = field_rep(poset_name, &poset);
        Ok(Self { ws, poset_name: poset_name.to_string(), poset, rep })
    }

    pub fn eval_str(&self, s: &str) -> Result<Value, CliError> {
        self.eval(&parse_expr(s)?)
    }

    fn vertex(&self, key: &str) -> Option<usize> {
        self.poset.index_of(key).or_else(|| key.parse().ok().filter(|&i: &usize| i < self.poset.len()))
    }

    fn int(e: &Expr) -> Result<i64, CliError> {
        if !e.args.is_empty() {
            return Err(CliError::usage(format!("expected an integer, found `{e}`")));
        }
        e.head.parse().map_err(|_| CliError::usage(format!("expected an integer, found `{e}`")))
    }

    fn module(&self, e: &Expr) -> Result<DiagModule, CliError> {
        match self.eval(e)? {
            Value::Module(m) => Ok(m),
            other => Err(CliError::usage(format!("`{e}` is a {}, expected a module", other.kind()))),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, CliError> {
        let arity = |n: usize| {
            if e.args.len() == n {
                Ok(())
            } else {
                Err(CliError::usage(format!("`{}` takes {n} argument(s)", e.head)))
            }
        };
        if e.args.is_empty() {
            if let Some(entry) = self.ws.get(&e.head) {
                return match &entry.object {
                    Object::Module { module, .. } => Ok(Value::Module(module.clone())),
                    Object::Morphism { map, .. } => Ok(Value::Morphism(map.clone())),
                    Object::Complex { complex, .. } => Ok(Value::Complex(complex.clone())),
                    Object::ChainMap { map, .. } => Ok(Value::ChainMap(map.clone())),
                    other => Err(CliError::usage(format!("`{}` is a {}, not an argument", e.head, other.kind()))),
                };
            }
            if e.head == "0" {
                return DiagModule::zero(self.rep.clone()).context(|| "zero module".into()).map(Value::Module);
            }
            let mut chars = e.head.chars();
            if let (Some(kind @ ('S' | 'P' | 'I')), Some(i)) = (chars.next(), self.vertex(chars.as_str())) {
                let m = match kind {
                    'S' => simple(&self.rep, i),
                    'P' => projective_generator(&self.rep, i),
                    _ => {
                        let q = Arc::new(BoundQuiver::from_poset(&self.poset));
                        Rep::injective(&q, i).to_diag(&self.rep).context(|| format!("injective {}", e.head))?
                    }
                };
                return Ok(Value::Module(m));
            }
            return Err(CliError::usage(format!("unknown name `{}`", e.head)));
        }
        match e.head.as_str() {
            "O" => {
                arity(1)?;
                let n = Self::int(&e.args[0])?;
                p1_twist(n).context(|| format!("O({n})")).map(Value::Module)
            }
            "sphere" | "disc" => {
                arity(2)?;
                let (m, n) = (self.module(&e.args[0])?, Self::int(&e.args[1])?);
                Ok(Value::Complex(if e.head == "sphere" {
                    BoundedComplex::sphere(&m, n)
                } else {
                    BoundedComplex::disc(&m, n)
                }))
            }
            "id" => {
                arity(1)?;
                Ok(match self.eval(&e.args[0])? {
                    Value::Module(m) => Value::Morphism(DiagMorphism::identity(&m)),
                    Value::Complex(x) => Value::ChainMap(ComplexMorphism::identity(&x)),
                    other => return Err(CliError::usage(format!("id of a {}", other.kind()))),
                })
            }
            "zero" => {
                arity(2)?;
                Ok(match (self.eval(&e.args[0])?, self.eval(&e.args[1])?) {
                    (Value::Module(a), Value::Module(b)) => Value::Morphism(DiagMorphism::zero(&a, &b)),
                    (Value::Complex(a), Value::Complex(b)) => Value::ChainMap(ComplexMorphism::zero(&a, &b)),
                    _ => return Err(CliError::usage("zero(X, Y) needs two modules or two complexes")),
                })
            }
            "sum" => {
                arity(2)?;
                let (a, b) = (self.module(&e.args[0])?, self.module(&e.args[1])?);
                direct_sum(&a, &b).context(|| format!("{e}")).map(|s| Value::Module(s.sum))
            }
            other => Err(CliError::usage(format!("unknown function `{other}`"))),
        }
    }
}

/// A frame large enough for every complex-like value, or the base frame of
/// their common poset.
pub fn frame_for(values: &[&Value], fallback: &FinitePoset) -> Result<Frame, CliError> {
    let poset = values.first().map_or(fallback, |v| &v.rep().poset);
    let spans: Vec<(i64, i64)> = values.iter().filter_map(|v| v.span()).collect();
    if spans.is_empty() {
        return Ok(Frame::Base(Arc::new(BoundQuiver::from_poset(poset))));
    }
    let lo = spans.iter().map(|s| s.0).min().unwrap();
    let hi = spans.iter().map(|s| s.1).max().unwrap();
    ComplexCategory::with_margin(poset, lo, hi).context(|| "complex window".into()).map(Frame::Complexes)
}

pub struct ResolvedTriple {
    pub name: String,
    pub frame: Frame,
    pub triple: HoveyTriple,
}

pub fn resolve_triple(ws: &Workspace, name: &str, budget: usize) -> Result<ResolvedTriple, CliError> {
    let spec: TripleSpec = match ws.get(name).map(|e| &e.object) {
        Some(Object::Triple(t)) => t.clone(),
        _ => return Err(CliError::usage(format!("`{name}` is not a triple"))),
    };
    let (frame, triple) = match (spec.kind, spec.complexes) {
        (TripleKind::InjectiveModel, Some((lo, hi))) => {
            let cat = ComplexCategory::with_margin(&spec.poset, lo, hi).context(|| format!("triple {name}"))?;
            let t = injective_model(&cat);
            (Frame::Complexes(cat), t)
        }
        (kind, _) => {
            let q = Arc::new(BoundQuiver::from_poset(&spec.poset));
            let t = match kind {
                TripleKind::Projective => HoveyTriple::projective(&q),
                TripleKind::Injective => HoveyTriple::injective(&q),
                TripleKind::Degenerate => HoveyTriple::degenerate(&q),
                _ => HoveyTriple::even_dimension_defect(&q),
            };
            (Frame::Base(q), t)
        }
    };
    Ok(ResolvedTriple { name: name.to_string(), frame, triple: triple.with_budget(budget) })
}

/// `projective` or `injective` on the frame, or `cofibrant` / `fibrant` of a triple.
pub fn resolve_pair(key: &str, frame: &Frame, triple: Option<&HoveyTriple>) -> Result<CotorsionPair, CliError> {
    match (key, triple) {
        ("projective", _) => Ok(CotorsionPair::projective(frame.quiver())),
        ("injective", _) => Ok(CotorsionPair::injective(frame.quiver())),
        ("cofibrant", Some(t)) => Ok(t.cofibrant_pair.clone()),
        ("fibrant", Some(t)) => Ok(t.fibrant_pair.clone()),
        ("cofibrant" | "fibrant", None) => Err(CliError::usage(format!("pair `{key}` needs --triple"))),
        _ => Err(CliError::usage(format!("unknown pair `{key}` (projective, injective, cofibrant, fibrant)"))),
    }
}

/// Universe members: keywords expand to one object per quiver vertex.
pub fn universe(env: &Env, frame: &Frame, items: &[String]) -> Result<Vec<Rep>, CliError> {
    let q = frame.quiver();
    let mut out: Vec<Rep> = Vec::new();
    for item in items {
        let new: Vec<Rep> = match item.as_str() {
            "zero" => vec![Rep::zero(q)],
            "simples" => (0..q.len()).map(|v| Rep::simple(q, v)).collect(),
            "projectives" => (0..q.len()).map(|v| Rep::projective(q, v)).collect(),
            "injectives" => (0..q.len()).map(|v| Rep::injective(q, v)).collect(),
            other => vec![frame.rep(&env.eval_str(other)?)?],
        };
        for x in new {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

pub fn default_universe() -> Vec<String> {
    ["zero", "simples", "projectives", "injectives"].map(String::from).to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let e = parse_expr("sum(S0, sphere(P1, -2))").unwrap();
        assert_eq!(e.head, "sum");
        assert_eq!(e.args[1].args[1].head, "-2");
        assert_eq!(e.to_string(), "sum(S0, sphere(P1, -2))");
        assert!(parse_expr("S0)").is_err());
        assert!(parse_expr("f(").is_err());
    }

    #[test]
    fn builtins_resolve() {
        let ws = Workspace::new();
        let env = Env::new(&ws, "A2").unwrap();
        let Value::Module(s1) = env.eval_str("S1").unwrap() else { panic!() };
        assert_eq!(s1.gens(1), 1);
        assert_eq!(s1.gens(0), 0);
        assert!(matches!(env.eval_str("O(-2)").unwrap(), Value::Module(_)));
        assert!(matches!(env.eval_str("id(disc(S0, 1))").unwrap(), Value::ChainMap(_)));
        assert_eq!(env.eval_str("Q7").unwrap_err().kind(), "UsageError");
    }
}
