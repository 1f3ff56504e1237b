//! Serialization of workspace entries back into the input language.

use std::fmt::Write;

use qcw_core::diagram::{DiagModule, FinitePoset, RingRep};
use qcw_core::exact_arith::{RingMapKind, RingMatrix, RingSpec};

use crate::error::CliError;
use crate::workspace::{Entry, Object, Workspace};

fn ring_keyword(spec: &RingSpec) -> Result<String, CliError> {
    let text = spec.to_string();
    match text.split('(').next() {
        Some("field" | "poly" | "ipoly" | "laurent") => Ok(text),
        _ => Err(CliError::usage(format!("ring {text} has no textual form"))),
    }
}

pub fn matrix(m: &RingMatrix) -> String {
    let var = m.ring.var().to_string();
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).fmt_with_var(&var)).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn poset(out: &mut String, name: &str, p: &FinitePoset) {
    let _ = writeln!(out, "poset {name} {{");
    let _ = writeln!(out, "  elements: {};", p.labels().join(" "));
    let rels: Vec<String> = p.covers().iter().map(|&(a, b)| format!("{} <= {}", p.label(a), p.label(b))).collect();
    let _ = writeln!(out, "  relations: {}", rels.join(" "));
    out.push_str("}\n");
}

fn ringrep(out: &mut String, name: &str, poset_name: &str, rep: &RingRep) -> Result<(), CliError> {
    let _ = writeln!(out, "ringrep {name} on {poset_name} {{");
    for (i, ring) in rep.rings.iter().enumerate() {
        let _ = writeln!(out, "  {}: {}", rep.poset.label(i), ring_keyword(ring)?);
    }
    for (i, j) in rep.poset.covers() {
        if rep.map(i, j).kind == RingMapKind::SwapInclusion {
            let _ = writeln!(out, "  swap {} -> {}", rep.poset.label(i), rep.poset.label(j));
        }
    }
    out.push_str("}\n");
    Ok(())
}

fn module(out: &mut String, name: &str, over: &str, m: &DiagModule) {
    let poset = &m.rep.poset;
    let _ = writeln!(out, "module {name} over {over} {{");
    for (i, v) in m.vertices.iter().enumerate() {
        let _ = write!(out, "  {} gens {}", poset.label(i), v.gens);
        if let Some(d) = &v.grading {
            let d: Vec<String> = d.iter().map(i64::to_string).collect();
            let _ = write!(out, " degrees [{}]", d.join(", "));
        }
        if v.relations.cols() > 0 {
            let _ = write!(out, " relations {}", matrix(&v.relations));
        }
        out.push('\n');
    }
    for (i, j) in poset.strict_pairs() {
        let t = m.transition(i, j);
        if t.rows() > 0 && t.cols() > 0 {
            let _ = writeln!(out, "  {} -> {} {}", poset.label(i), poset.label(j), matrix(&t));
        }
    }
    out.push_str("}\n");
}

pub fn entry(e: &Entry) -> Result<String, CliError> {
    let mut out = String::new();
    let name = &e.name;
    match &e.object {
        Object::Poset(p) => poset(&mut out, name, p),
        Object::RingRep { rep, poset } => ringrep(&mut out, name, poset, rep)?,
        Object::Module { module: m, over } => module(&mut out, name, over, m),
        Object::Morphism { map, source, target } => {
            let _ = writeln!(out, "morphism {name} : {source} -> {target} {{");
            for (i, c) in map.components.iter().enumerate() {
                if c.rows() > 0 && c.cols() > 0 {
                    let _ = writeln!(out, "  {}: {}", map.source.rep.poset.label(i), matrix(c));
                }
            }
            out.push_str("}\n");
        }
        Object::Complex { components, differentials, .. } => {
            let _ = writeln!(out, "complex {name} {{");
            for (n, m) in components {
                let _ = writeln!(out, "  {n}: {m}");
            }
            for (n, f) in differentials {
                let _ = writeln!(out, "  d {n}: {f}");
            }
            out.push_str("}\n");
        }
        Object::ChainMap { source, target, components, .. } => {
            let _ = writeln!(out, "morphism {name} : {source} -> {target} {{");
            for (n, f) in components {
                let _ = writeln!(out, "  {n}: {f}");
            }
            out.push_str("}\n");
        }
        Object::Triple(t) => {
            let _ = write!(out, "triple {name} on {}", t.poset_name);
            if let Some((lo, hi)) = t.complexes {
                let _ = write!(out, " complexes {lo}..{hi}");
            }
            let _ = writeln!(out, " {}", t.kind.keyword());
        }
    }
    Ok(out)
}

/// The whole workspace in definition order, one blank line between entries.
pub fn workspace(ws: &Workspace) -> Result<String, CliError> {
    let parts = ws.entries().iter().map(entry).collect::<Result<Vec<_>, _>>()?;
    Ok(parts.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
poset V { elements: a b c; relations: a <= b  a <= c }
ringrep R on V { a: poly(t)  b: laurent(t)  c: laurent(t)  swap a -> c }
module M over R {
  a gens 1 degrees [2]
  b gens 1 degrees [0]
  c gens 1 degrees [0]
  a -> b [[t^2]]
  a -> c [[1]]
}
module T over A2 { 0 gens 2 relations [[0], [0]]  1 gens 1  0 -> 1 [[1, -1/2]] }
module U over A2 { 1 gens 1 }
morphism f : U -> T { 1: [[3]] }
complex X { 0: U  1: T  d 0: f }
morphism g : X -> X { 0: idT }
triple Q on A2 complexes -1..1 injective-model
";

    #[test]
    fn round_trip_preserves_objects() {
        let src = SAMPLE.replace(
            "morphism g : X -> X { 0: idT }",
            "morphism idU : U -> U { 1: [[1]] }\nmorphism idT : T -> T { 0: [[1, 0], [0, 1]]  1: [[1]] }\nmorphism g : X -> X { 0: idU  1: idT }",
        );
        let mut ws = Workspace::new();
        ws.load_str("sample", &src).unwrap();
        let text = workspace(&ws).unwrap();
        let mut again = Workspace::new();
        again.load_str("again", &text).unwrap();
        assert_eq!(ws.entries().len(), again.entries().len());
        for (a, b) in ws.entries().iter().zip(again.entries()) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.object, b.object, "{text}");
        }
        assert_eq!(workspace(&again).unwrap(), text);
    }

    #[test]
    fn unknown_names_are_reference_errors() {
        let mut ws = Workspace::new();
        let err = ws.load_str("s", SAMPLE).unwrap_err();
        assert_eq!(err.kind(), "ReferenceError");
        assert!(err.to_string().contains("s:15"), "{err}");
    }
}
