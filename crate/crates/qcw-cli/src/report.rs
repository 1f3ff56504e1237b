//! Structured text reports: nested `key: value` lines and `key { ... }` blocks
//! in insertion order, so equal inputs give byte-equal reports.

use std::fmt::{self, Display, Write};
use std::time::Duration;

use qcw_core::exact_arith::QMat;
use qcw_core::homotopy_algebra::{Mor, Rep};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The computation finished and answered "no".
    Negative,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Error => 2,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Negative => "negative",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Field(String, String),
    Block(String, Block),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Block(Vec<Item>);

impl Block {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.0.push(Item::Field(key.into(), value.to_string()));
    }

    pub fn block(mut self, key: impl Into<String>, inner: Block) -> Self {
        self.push_block(key, inner);
        self
    }

    pub fn push_block(&mut self, key: impl Into<String>, inner: Block) {
        self.0.push(Item::Block(key.into(), inner));
    }

    pub fn append(mut self, other: Block) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn render(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        for item in &self.0 {
            match item {
                Item::Field(k, v) => {
                    let _ = writeln!(out, "{pad}{k}: {v}");
                }
                Item::Block(k, b) => {
                    let _ = writeln!(out, "{pad}{k} {{");
                    b.render(out, depth + 1);
                    let _ = writeln!(out, "{pad}}}");
                }
            }
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn qmat(m: &QMat) -> String {
    list((0..m.rows()).map(|i| list((0..m.cols()).map(|j| m.get(i, j).clone()))))
}

/// Dimension vector plus the matrix on every nonzero arrow.
pub fn rep(x: &Rep) -> Block {
    let mut b = Block::new().field("dims", list(&x.dims));
    for (k, &(s, t)) in x.quiver.arrows.iter().enumerate() {
        if x.dims[s] > 0 && x.dims[t] > 0 {
            b.push(format!("{} -> {}", x.quiver.labels[s], x.quiver.labels[t]), qmat(&x.maps[k]));
        }
    }
    b
}

/// A witness map as its list of nonzero vertex components.
pub fn mor(f: &Mor) -> Block {
    let mut b = Block::new().field("source", list(&f.source.dims)).field("target", list(&f.target.dims));
    for (v, c) in f.comps.iter().enumerate() {
        if c.rows() > 0 && c.cols() > 0 && !c.is_zero() {
            b.push(format!("at {}", f.source.quiver.labels[v]), qmat(c));
        }
    }
    b
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Block,
    pub warnings: Vec<String>,
    pub timing: Option<Duration>,
}

impl Report {
    pub fn new(command: impl Into<String>, status: Status, result: Block) -> Self {
        Self { command: command.into(), status, result, warnings: Vec::new(), timing: None }
    }

    pub fn failure(command: impl Into<String>, err: &CliError) -> Self {
        let result = Block::new().field("kind", err.kind()).field("message", err);
        Self::new(command, Status::Error, result)
    }

    pub fn with_warnings(mut self, warnings: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(warnings);
        self
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut top = Block::new().field("command", &self.command).field("status", self.status.word());
        let key = if self.status == Status::Error { "error" } else { "result" };
        top.push_block(key, self.result.clone());
        let mut warnings = Block::new();
        for w in &self.warnings {
            warnings.push("-", w);
        }
        top.push_block("warnings", warnings);
        if let Some(t) = self.timing {
            top.push_block("timing", Block::new().field("elapsed_ms", t.as_millis()));
        }
        top.render(&mut out, 0);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_rendering() {
        let r = Report::new(
            "qcw ext S0 S1",
            Status::Ok,
            Block::new().field("dimension", 1).block("inner", Block::new().field("a", "b")),
        )
        .with_warnings(["careful".to_string()]);
        assert_eq!(
            r.to_string(),
            "command: qcw ext S0 S1\nstatus: ok\nresult {\n  dimension: 1\n  inner {\n    a: b\n  }\n}\nwarnings {\n  -: careful\n}\n"
        );
    }
}
