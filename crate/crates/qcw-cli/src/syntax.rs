//! Tokens and the surface syntax of `.qcw` files.
//!
//! ```text
//! file     := def*
//! def      := poset | ringrep | module | morphism | complex | triple
//! poset    := "poset" NAME "{" "elements:" word* ";" "relations:" (word "<=" word)* "}"
//! ringrep  := "ringrep" NAME "on" NAME "{" (word ":" ring)* ("swap" word "->" word)* "}"
//! ring     := "field" | "poly(" VAR ")" | "ipoly(" VAR ")" | "laurent(" VAR ")"
//! module   := "module" NAME "over" NAME "{" vertex* edge* "}"
//! vertex   := word "gens" INT ["degrees" "[" INT* "]"] ["relations" matrix]
//! edge     := word "->" word matrix
//! morphism := "morphism" NAME ":" NAME "->" NAME "{" (key ":" (matrix | NAME))* "}"
//! complex  := "complex" NAME "{" (INT ":" NAME | "d" INT ":" NAME)* "}"
//! triple   := "triple" NAME "on" NAME ["complexes" INT ".." INT] KIND
//! matrix   := "[" ( "[" expr ("," expr)* "]" ),* "]"
//! ```
//!
//! Polynomials are written like `-1/2*x^-3 + x`. `#` starts a comment and
//! semicolons are optional separators.

use std::fmt;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
}

const SYMBOLS: [&str; 17] = ["<=", "->", "..", "{", "}", "[", "]", "(", ")", ":", ";", ",", "+", "-", "*", "/", "^"];

pub fn lex(file: &str, src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let text = raw.split('#').next().unwrap_or("");
        let mut rest = text;
        while let Some(c) = rest.chars().next() {
            if c.is_whitespace() {
                rest = &rest[c.len_utf8()..];
                continue;
            }
            if !c.is_ascii() {
                return Err(CliError::syntax(file, line, format!("non-ASCII character {c:?}")));
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let end = rest
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''))
                    .unwrap_or(rest.len());
                out.push(Token { tok: Tok::Word(rest[..end].to_string()), line });
                rest = &rest[end..];
                continue;
            }
            let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(CliError::syntax(file, line, format!("unexpected character {c:?}")));
            };
            out.push(Token { tok: Tok::Sym(sym), line });
            rest = &rest[sym.len()..];
        }
    }
    Ok(out)
}

/// A polynomial literal: (exponent, numerator, denominator) terms and the variable used, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLit {
    pub terms: Vec<(i64, i64, i64)>,
    pub var: Option<String>,
}

pub type MatrixLit = Vec<Vec<PolyLit>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLit {
    pub vertex: String,
    pub gens: usize,
    pub degrees: Option<Vec<i64>>,
    pub relations: Option<MatrixLit>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryValue {
    Matrix(MatrixLit),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefBody {
    Poset { elements: Vec<String>, relations: Vec<(String, String)> },
    RingRep { poset: String, rings: Vec<(String, String, Option<String>)>, swaps: Vec<(String, String)> },
    Module { over: String, vertices: Vec<VertexLit>, edges: Vec<(String, String, MatrixLit)> },
    Morphism { source: String, target: String, entries: Vec<(String, EntryValue)> },
    Complex { components: Vec<(i64, String)>, differentials: Vec<(i64, String)> },
    Triple { on: String, complexes: Option<(i64, i64)>, kind: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def {
    pub name: String,
    pub line: usize,
    pub body: DefBody,
}

struct Parser<'a> {
    file: &'a str,
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map_or(1, |t| t.line)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::syntax(self.file, self.line(), msg.into()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(t)) if t == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        self.pos += usize::from(hit);
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), CliError> {
        if self.eat_sym(s) {
            return Ok(());
        }
        match self.peek() {
            Some(t) => self.err(format!("expected `{s}`, found {t}")),
            None => self.err(format!("expected `{s}`, found end of file")),
        }
    }

    fn expect_keyword(&mut self, w: &str) -> Result<(), CliError> {
        if self.is_word(w) {
            self.pos += 1;
            return Ok(());
        }
        self.err(format!("expected `{w}`"))
    }

    fn word(&mut self) -> Result<String, CliError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            Some(t) => self.err(format!("expected a name, found {t}")),
            None => self.err("expected a name, found end of file"),
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.eat_sym("-");
        let w = self.word()?;
        match w.parse::<i64>() {
            Ok(v) => Ok(if neg { -v } else { v }),
            Err(_) => self.err(format!("expected an integer, found `{w}`")),
        }
    }

    fn skip_separators(&mut self) {
        while self.eat_sym(";") {}
    }

    fn definition(&mut self) -> Result<Def, CliError> {
        let line = self.line();
        let kind = self.word()?;
        let name = self.word()?;
        let body = match kind.as_str() {
            "poset" => self.poset()?,
            "ringrep" => self.ringrep()?,
            "module" => self.module()?,
            "morphism" => self.morphism()?,
            "complex" => self.complex()?,
            "triple" => self.triple()?,
            other => return Err(CliError::syntax(self.file, line, format!("unknown definition kind `{other}`"))),
        };
        Ok(Def { name, line, body })
    }

    fn poset(&mut self) -> Result<DefBody, CliError> {
        self.expect_sym("{")?;
        self.expect_keyword("elements")?;
        self.expect_sym(":")?;
        let mut elements = Vec::new();
        while matches!(self.peek(), Some(Tok::Word(_))) && !self.is_word("relations") {
            elements.push(self.word()?);
        }
        self.skip_separators();
        let mut relations = Vec::new();
        if self.is_word("relations") {
            self.pos += 1;
            self.expect_sym(":")?;
            while !self.is_sym("}") {
                let a = self.word()?;
                self.expect_sym("<=")?;
                relations.push((a, self.word()?));
                self.eat_sym(",");
                self.skip_separators();
            }
        }
        self.expect_sym("}")?;
        Ok(DefBody::Poset { elements, relations })
    }

    fn ringrep(&mut self) -> Result<DefBody, CliError> {
        self.expect_keyword("on")?;
        let poset = self.word()?;
        self.expect_sym("{")?;
        let (mut rings, mut swaps) = (Vec::new(), Vec::new());
        loop {
            self.skip_separators();
            if self.eat_sym("}") {
                break;
            }
            if self.is_word("swap") && matches!(self.peek_at(2), Some(Tok::Sym("->"))) {
                self.pos += 1;
                let a = self.word()?;
                self.expect_sym("->")?;
                swaps.push((a, self.word()?));
                continue;
            }
            let vertex = self.word()?;
            self.expect_sym(":")?;
            let kind = self.word()?;
            let var = if self.eat_sym("(") {
                let v = self.word()?;
                self.expect_sym(")")?;
                Some(v)
            } else {
                None
            };
            rings.push((vertex, kind, var));
        }
        Ok(DefBody::RingRep { poset, rings, swaps })
    }

    fn module(&mut self) -> Result<DefBody, CliError> {
        self.expect_keyword("over")?;
        let over = self.word()?;
        self.expect_sym("{")?;
        let (mut vertices, mut edges) = (Vec::new(), Vec::new());
        loop {
            self.skip_separators();
            if self.eat_sym("}") {
                break;
            }
            let vertex = self.word()?;
            if self.eat_sym("->") {
                let to = self.word()?;
                edges.push((vertex, to, self.matrix()?));
                continue;
            }
            self.expect_keyword("gens")?;
            let gens = self.int()?;
            if gens < 0 {
                return self.err("generator counts are nonnegative");
            }
            let mut lit = VertexLit { vertex, gens: gens as usize, degrees: None, relations: None };
            loop {
                if self.is_word("degrees") {
                    self.pos += 1;
                    self.expect_sym("[")?;
                    let mut degs = Vec::new();
                    while !self.eat_sym("]") {
                        degs.push(self.int()?);
                        self.eat_sym(",");
                    }
                    lit.degrees = Some(degs);
                } else if self.is_word("relations") {
                    self.pos += 1;
                    lit.relations = Some(self.matrix()?);
                } else {
                    break;
                }
            }
            vertices.push(lit);
        }
        Ok(DefBody::Module { over, vertices, edges })
    }

    fn morphism(&mut self) -> Result<DefBody, CliError> {
        self.expect_sym(":")?;
        let source = self.word()?;
        self.expect_sym("->")?;
        let target = self.word()?;
        self.expect_sym("{")?;
        let mut entries = Vec::new();
        loop {
            self.skip_separators();
            if self.eat_sym("}") {
                break;
            }
            let key = if self.is_sym("-") { self.int()?.to_string() } else { self.word()? };
            self.expect_sym(":")?;
            let value =
                if self.is_sym("[") { EntryValue::Matrix(self.matrix()?) } else { EntryValue::Name(self.word()?) };
            entries.push((key, value));
        }
        Ok(DefBody::Morphism { source, target, entries })
    }

    fn complex(&mut self) -> Result<DefBody, CliError> {
        self.expect_sym("{")?;
        let (mut components, mut differentials) = (Vec::new(), Vec::new());
        loop {
            self.skip_separators();
            if self.eat_sym("}") {
                break;
            }
            let is_d = self.is_word("d");
            if is_d {
                self.pos += 1;
            }
            let n = self.int()?;
            self.expect_sym(":")?;
            let name = self.word()?;
            if is_d {
                differentials.push((n, name));
            } else {
                components.push((n, name));
            }
        }
        Ok(DefBody::Complex { components, differentials })
    }

    fn triple(&mut self) -> Result<DefBody, CliError> {
        self.expect_keyword("on")?;
        let on = self.word()?;
        let complexes = if self.is_word("complexes") {
            self.pos += 1;
            let lo = self.int()?;
            self.expect_sym("..")?;
            Some((lo, self.int()?))
        } else {
            None
        };
        let mut kind = self.word()?;
        while self.eat_sym("-") {
            kind.push('-');
            kind.push_str(&self.word()?);
        }
        Ok(DefBody::Triple { on, complexes, kind })
    }

    fn matrix(&mut self) -> Result<MatrixLit, CliError> {
        self.expect_sym("[")?;
        let mut rows = Vec::new();
        while !self.eat_sym("]") {
            self.expect_sym("[")?;
            let mut row = Vec::new();
            while !self.eat_sym("]") {
                row.push(self.poly()?);
                self.eat_sym(",");
            }
            rows.push(row);
            self.eat_sym(",");
        }
        Ok(rows)
    }

    fn poly(&mut self) -> Result<PolyLit, CliError> {
        let mut lit = PolyLit { terms: Vec::new(), var: None };
        let mut first = true;
        loop {
            let sign = if self.eat_sym("-") {
                -1
            } else if self.eat_sym("+") || first {
                1
            } else {
                break;
            };
            first = false;
            let (mut num, mut den) = (1i64, 1i64);
            let mut seen = false;
            if let Some(Tok::Word(w)) = self.peek() {
                if w.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    num = self.int()?;
                    if self.eat_sym("/") {
                        den = self.int()?;
                        if den == 0 {
                            return self.err("zero denominator");
                        }
                    }
                    seen = true;
                    if !self.eat_sym("*") {
                        lit.terms.push((0, sign * num, den));
                        continue;
                    }
                }
            }
            match self.peek() {
                Some(Tok::Word(w)) if w.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) => {
                    let v = self.word()?;
                    if lit.var.as_ref().is_some_and(|u| *u != v) {
                        return self.err(format!("mixed variables `{}` and `{v}`", lit.var.unwrap()));
                    }
                    lit.var = Some(v);
                    let exp = if self.eat_sym("^") { self.int()? } else { 1 };
                    lit.terms.push((exp, sign * num, den));
                }
                _ if seen => return self.err("expected a variable after `*`"),
                _ => return self.err("expected a coefficient or a variable"),
            }
        }
        Ok(lit)
    }
}

pub fn parse(file: &str, src: &str) -> Result<Vec<Def>, CliError> {
    let toks = lex(file, src)?;
    let mut p = Parser { file, toks: &toks, pos: 0 };
    let mut defs = Vec::new();
    loop {
        p.skip_separators();
        if p.peek().is_none() {
            break;
        }
        defs.push(p.definition()?);
    }
    Ok(defs)
}
