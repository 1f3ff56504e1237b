//! Argument parsing and command dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qcw_core::cech::{cech_resolution, cohomology, locally_projective, twist_generation_check, SemilatticeRep};
use qcw_core::complexes::{cokernel_is_tensor, is_degreewise_mono, pushout_product, quillen_bifunctor_check};
use qcw_core::diagram::{hom_space, tensor, DiagModule};
use qcw_core::homotopy_algebra::{
    cokernel, ext1, extn, hom_dim, is_cotorsion_pair, kernel, square_space, Conflation, PairReport, DEFAULT_BUDGET,
};
use qcw_core::model_structures::{
    classify, factorize, homotopic, homotopy_hom, verify_triple, HomotopyRelation, Which,
};

use crate::error::{CliError, Context};
use crate::eval::{
    as_chain_map, default_universe, frame_for, resolve_pair, resolve_triple, split_top, universe, Env, Frame,
    ResolvedTriple, Value,
};
use crate::report::{list, mor, rep, yes_no, Block, Report, Status};
use crate::workspace::Workspace;

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, found `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    /// cofibration then trivial fibration
    CofTfib,
    /// trivial cofibration then fibration
    TcofFib,
}

#[derive(Debug, Parser)]
#[command(name = "qcw", version, about = "Homological algebra over poset ring diagrams, in exact arithmetic")]
pub struct Cli {
    /// Definition files to load, in order.
    #[arg(short = 'f', long = "file", global = true)]
    pub files: Vec<PathBuf>,
    /// Internal degree window LO..HI for graded computations.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Option<(i64, i64)>,
    /// Step budget for small object arguments.
    #[arg(long, global = true, env = "QCW_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Comma-separated universe: names, expressions or zero/simples/projectives/injectives.
    #[arg(long, global = true)]
    pub universe: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Poset for S<i>, P<i>, I<i> and 0.
    #[arg(long, global = true, default_value = "A2")]
    pub poset: String,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load the files and list every definition.
    Validate { names: Vec<String> },
    /// Is a module quasi-coherent?
    Qcheck { module: String },
    /// Dimension of the hom-space.
    Hom { source: String, target: String },
    /// Dimension of Ext^n.
    Ext {
        source: String,
        target: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Does every square from f to g have a diagonal filler?
    Lift { f: String, g: String },
    /// Factor a map through a triple's factorization systems.
    Factorize {
        map: String,
        #[arg(long)]
        triple: String,
        #[arg(long, value_enum, default_value_t = WhichArg::CofTfib)]
        which: WhichArg,
    },
    /// Special approximation sequences of an object.
    Approx {
        object: String,
        #[arg(long, default_value = "projective")]
        pair: String,
        #[arg(long)]
        triple: Option<String>,
    },
    /// Check a cotorsion pair on a finite universe.
    PairCheck {
        #[arg(long, default_value = "projective")]
        pair: String,
        #[arg(long)]
        triple: Option<String>,
    },
    /// Check the Hovey triple axioms on a finite universe.
    TripleVerify { triple: String },
    /// Morphism classes in a triple's model structure.
    Classify {
        map: String,
        #[arg(long)]
        triple: String,
    },
    /// Left and right homotopy of two parallel maps.
    Homotopic {
        f: String,
        g: String,
        #[arg(long)]
        triple: String,
    },
    /// Hom-space in the homotopy category.
    HoHom {
        source: String,
        target: String,
        #[arg(long)]
        triple: String,
    },
    /// Build and verify the Cech resolution.
    Cech {
        module: String,
        /// Comma-separated cover vertices; defaults to the minimal elements.
        #[arg(long)]
        cover: Option<String>,
    },
    /// Cohomology of the global sections of the Cech resolution.
    Cohomology {
        module: String,
        #[arg(long)]
        cover: Option<String>,
    },
    /// Tensor product of modules or complexes.
    Tensor { left: String, right: String },
    /// Pushout-product of two chain maps.
    PushoutProduct {
        f: String,
        g: String,
        #[arg(long)]
        triple: Option<String>,
    },
    /// Local projectivity and generation by twists.
    BundleCheck {
        module: String,
        /// Comma-separated twists to test generation by.
        #[arg(long, allow_hyphen_values = true)]
        twists: Option<String>,
    },
}

fn negative_unless(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Negative
    }
}

fn conflation(c: &Conflation) -> Block {
    Block::new()
        .field("left", c.left())
        .field("middle", c.middle())
        .field("right", c.right())
        .field("exact", yes_no(c.is_exact()))
}

fn pair_report(p: &PairReport) -> Block {
    let mut b = Block::new()
        .field("orthogonal", yes_no(p.orthogonal()))
        .field("left_unwitnessed", p.left_unwitnessed.len())
        .field("right_unwitnessed", p.right_unwitnessed.len())
        .field("cotorsion_pair", yes_no(p.is_cotorsion_pair()));
    if let Some((a, x)) = &p.orthogonality_witness {
        b.push_block("orthogonality_witness", Block::new().field("left", a).field("right", x));
    }
    b
}

fn module_block(m: &DiagModule) -> Block {
    let mut b = Block::new();
    for (i, v) in m.vertices.iter().enumerate() {
        let mut line = format!("{} gens over {}", v.gens, v.ring);
        if v.relations.cols() > 0 {
            line.push_str(&format!(", {} relations", v.relations.cols()));
        }
        b.push(m.rep.poset.label(i), line);
    }
    b
}

/// Largest absolute generator degree, when every vertex is graded.
fn grading_bound(m: &DiagModule) -> Option<i64> {
    let mut bound = 0;
    for v in &m.vertices {
        bound = v.grading.as_ref()?.iter().map(|d| d.abs()).fold(bound, i64::max);
    }
    Some(bound)
}

fn cover_indices(m: &DiagModule, cover: Option<&str>) -> Result<Vec<usize>, CliError> {
    let poset = &m.rep.poset;
    match cover {
        None => Ok((0..poset.len()).filter(|&i| (0..poset.len()).all(|j| !poset.lt(j, i))).collect()),
        Some(s) => split_top(s)
            .into_iter()
            .map(|k| {
                poset
                    .index_of(k)
                    .or_else(|| k.parse().ok().filter(|&i: &usize| i < poset.len()))
                    .ok_or_else(|| CliError::usage(format!("no vertex `{k}` for the cover")))
            })
            .collect(),
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| CliError::usage(format!("bad integer `{t}`"))))
        .collect()
}

struct Runner<'a> {
    cli: &'a Cli,
    env: Env<'a>,
}

impl Runner<'_> {
    fn value(&self, s: &str) -> Result<Value, CliError> {
        self.env.eval_str(s)
    }

    fn module(&self, s: &str) -> Result<DiagModule, CliError> {
        match self.value(s)? {
            Value::Module(m) => Ok(m),
            _ => Err(CliError::usage(format!("`{s}` is not a module"))),
        }
    }

    fn frame(&self, values: &[&Value]) -> Result<Frame, CliError> {
        frame_for(values, &self.env.poset)
    }

    fn triple(&self, name: &str) -> Result<ResolvedTriple, CliError> {
        resolve_triple(self.env.ws, name, self.cli.budget)
    }

    fn universe_items(&self) -> Vec<String> {
        match &self.cli.universe {
            Some(u) => split_top(u).into_iter().map(String::from).collect(),
            None => default_universe(),
        }
    }

    fn run(&self) -> Result<(Status, Block, Vec<String>), CliError> {
        let mut warnings = Vec::new();
        let (status, block) = match &self.cli.command {
            Command::Validate { names } => {
                let ws = self.env.ws;
                for n in names {
                    if ws.get(n).is_none() {
                        return Err(CliError::usage(format!("no definition named `{n}`")));
                    }
                }
                let mut b = Block::new().field("definitions", ws.entries().len());
                for e in ws.entries().iter().filter(|e| names.is_empty() || names.contains(&e.name)) {
                    b.push_block(
                        &e.name,
                        Block::new()
                            .field("kind", e.object.kind())
                            .field("defined_at", &e.provenance)
                            .field("valid", "yes"),
                    );
                    warnings.extend(e.warnings.iter().map(|w| format!("{}: {w}", e.name)));
                }
                (Status::Ok, b)
            }
            Command::Qcheck { module } => {
                let m = self.module(module)?;
                let qc = m.is_quasicoherent().context(|| "qcheck".into())?;
                let mut b = Block::new().field("quasi_coherent", yes_no(qc.quasi_coherent));
                if let Some((a, c)) = qc.failing_edge {
                    b.push("failing_edge", format!("{} -> {}", m.rep.poset.label(a), m.rep.poset.label(c)));
                }
                if let Some(r) = &qc.reason {
                    b.push("reason", r);
                }
                (negative_unless(qc.quasi_coherent), b)
            }
            Command::Hom { source, target } => {
                let (x, y) = (self.value(source)?, self.value(target)?);
                let dim = match (&x, &y) {
                    (Value::Module(a), Value::Module(c)) => {
                        let window = self.cli.window.or_else(|| {
                            let w = grading_bound(a)? + grading_bound(c)? + 1;
                            warnings.push(format!("degree window defaulted to {}..{w}", -w));
                            Some((-w, w))
                        });
                        hom_space(a, c, window).context(|| "hom".into())?.len()
                    }
                    _ => {
                        let frame = self.frame(&[&x, &y])?;
                        hom_dim(&frame.rep(&x)?, &frame.rep(&y)?)
                    }
                };
                (Status::Ok, Block::new().field("dimension", dim))
            }
            Command::Ext { source, target, degree } => {
                let (x, y) = (self.value(source)?, self.value(target)?);
                let frame = self.frame(&[&x, &y])?;
                let dim = extn(&frame.rep(&x)?, &frame.rep(&y)?, *degree);
                (Status::Ok, Block::new().field("degree", degree).field("dimension", dim))
            }
            Command::Lift { f, g } => {
                let (fv, gv) = (self.value(f)?, self.value(g)?);
                let frame = self.frame(&[&fv, &gv])?;
                let (f, g) = (frame.mor(&fv)?, frame.mor(&gv)?);
                let space = square_space(&f, &g);
                let ext = ext1(&cokernel(&f).0, &kernel(&g).0);
                let mut b = Block::new()
                    .field("squares", space.squares.len())
                    .field("obstructions", space.obstructions.len())
                    .field("ext1_coker_ker", ext)
                    .field("lifting", yes_no(space.has_lifting()));
                if let Some(&k) = space.obstructions.first() {
                    let (u, v) = &space.squares[k];
                    b.push_block("obstruction", Block::new().block("top", mor(u)).block("bottom", mor(v)));
                }
                (negative_unless(space.has_lifting()), b)
            }
            Command::Factorize { map, triple, which } => {
                let t = self.triple(triple)?;
                let h = t.frame.mor(&self.value(map)?)?;
                let which = match which {
                    WhichArg::CofTfib => Which::CofTFib,
                    WhichArg::TcofFib => Which::TCofFib,
                };
                let fac = factorize(&h, &t.triple, which).context(|| format!("factorize with {}", t.name))?;
                let b = Block::new()
                    .field("which", if which == Which::CofTFib { "cof-tfib" } else { "tcof-fib" })
                    .block("middle", rep(fac.middle()))
                    .field("left_cokernel", &fac.left_cokernel)
                    .field("right_kernel", &fac.right_kernel)
                    .block("left", mor(&fac.left))
                    .block("right", mor(&fac.right));
                (Status::Ok, b)
            }
            Command::Approx { object, pair, triple } => {
                let x = self.value(object)?;
                let (frame, t) = match triple {
                    Some(name) => {
                        let t = self.triple(name)?;
                        (t.frame.clone(), Some(t))
                    }
                    None => (self.frame(&[&x])?, None),
                };
                let p = resolve_pair(pair, &frame, t.as_ref().map(|t| &t.triple))?;
                let x = frame.rep(&x)?;
                let a = p.approximations(&x, self.cli.budget).context(|| format!("approximations for pair {pair}"))?;
                let ok = p.right.contains(a.right.middle())
                    && p.left.contains(a.right.right())
                    && p.right.contains(a.left.left())
                    && p.left.contains(a.left.middle());
                let b = Block::new()
                    .field("pair", format!("({}, {})", p.left.name, p.right.name))
                    .block("right_approximation", conflation(&a.right))
                    .block("left_approximation", conflation(&a.left))
                    .field("filtration_length", a.filtration.steps.len())
                    .field("classes_respected", yes_no(ok));
                (negative_unless(ok), b)
            }
            Command::PairCheck { pair, triple } => {
                let (frame, t) = match triple {
                    Some(name) => {
                        let t = self.triple(name)?;
                        (t.frame.clone(), Some(t))
                    }
                    None => (self.frame(&[])?, None),
                };
                let p = resolve_pair(pair, &frame, t.as_ref().map(|t| &t.triple))?;
                let u = universe(&self.env, &frame, &self.universe_items())?;
                let r = is_cotorsion_pair(&p, &u);
                let b = Block::new()
                    .field("pair", format!("({}, {})", p.left.name, p.right.name))
                    .field("universe", u.len());
                let b = b.append(pair_report(&r));
                (negative_unless(r.is_cotorsion_pair()), b)
            }
            Command::TripleVerify { triple } => {
                let t = self.triple(triple)?;
                let u = universe(&self.env, &t.frame, &self.universe_items())?;
                let r = verify_triple(&t.triple, &u).context(|| format!("verifying {}", t.name))?;
                let mut b = Block::new()
                    .field("triple", &t.name)
                    .field("universe", r.universe_size)
                    .field("closure", r.closure_size)
                    .field("retract_closed", yes_no(r.retract_closed()))
                    .field("two_of_three", yes_no(r.two_of_three()))
                    .block("cofibrant_pair", pair_report(&r.cofibrant_pair))
                    .block("fibrant_pair", pair_report(&r.fibrant_pair))
                    .field("complete", yes_no(r.complete()))
                    .field("passed", yes_no(r.passed()));
                if let Some((w, x)) = &r.retract_witness {
                    b.push_block("retract_witness", Block::new().field("trivial", w).field("retract", x));
                }
                if let Some(c) = &r.two_of_three_witness {
                    b.push_block("two_of_three_witness", conflation(c));
                }
                for f in &r.completeness_failures {
                    b.push_block(
                        "completeness_failure",
                        Block::new().field("pair", &f.pair).field("object", &f.object).field("reason", &f.reason),
                    );
                }
                (negative_unless(r.passed()), b)
            }
            Command::Classify { map, triple } => {
                let t = self.triple(triple)?;
                let h = t.frame.mor(&self.value(map)?)?;
                let c = classify(&h, &t.triple).context(|| format!("classify in {}", t.name))?;
                let mut b = Block::new()
                    .field("cofibration", yes_no(c.cofibration))
                    .field("trivial_cofibration", yes_no(c.trivial_cofibration))
                    .field("fibration", yes_no(c.fibration))
                    .field("trivial_fibration", yes_no(c.trivial_fibration))
                    .field("weak_equivalence", yes_no(c.weak_equivalence));
                if let Some(cat) = t.frame.category() {
                    let cone = cat.cone(&h).context(|| "cone".into())?;
                    b.push("cone_acyclic", yes_no(cat.is_acyclic(&cone)));
                    b.push("quasi_isomorphism", yes_no(cat.is_quasi_isomorphism(&h)));
                }
                (Status::Ok, b)
            }
            Command::Homotopic { f, g, triple } => {
                let t = self.triple(triple)?;
                let (f, g) = (t.frame.mor(&self.value(f)?)?, t.frame.mor(&self.value(g)?)?);
                let r = homotopic(&f, &g, &t.triple).context(|| format!("homotopy in {}", t.name))?;
                let relation = match r.relation {
                    HomotopyRelation::Left => "left",
                    HomotopyRelation::Right => "right",
                    HomotopyRelation::Both => "both",
                    HomotopyRelation::Neither => "neither",
                };
                let mut b = Block::new().field("relation", relation);
                if let Some(w) = &r.left_witness {
                    b.push_block("left_witness", mor(w));
                }
                if let Some(w) = &r.right_witness {
                    b.push_block("right_witness", mor(w));
                }
                (negative_unless(r.relation != HomotopyRelation::Neither), b)
            }
            Command::HoHom { source, target, triple } => {
                let t = self.triple(triple)?;
                let (x, y) = (t.frame.rep(&self.value(source)?)?, t.frame.rep(&self.value(target)?)?);
                let h = homotopy_hom(&x, &y, &t.triple).context(|| format!("homotopy hom in {}", t.name))?;
                let b = Block::new()
                    .field("hom_dim", h.hom_dim)
                    .field("null_dim", h.null_dim)
                    .field("dimension", h.dimension())
                    .field("cofibrant_replacement", &h.cofibrant_replacement.source)
                    .field("fibrant_replacement", &h.fibrant_replacement.target);
                (Status::Ok, b)
            }
            Command::Cech { module, cover } => {
                let m = self.module(module)?;
                let rep = SemilatticeRep::new(m.rep.clone()).context(|| "cech".into())?;
                let cover = cover_indices(&m, cover.as_deref())?;
                let c = cech_resolution(&rep, &m, &cover).context(|| "cech".into())?;
                let r = c.verify().context(|| "verifying the resolution".into())?;
                let labels: Vec<&str> = cover.iter().map(|&i| m.rep.poset.label(i)).collect();
                let mut terms = Block::new();
                for (p, t) in c.terms.iter().enumerate() {
                    terms.push(format!("C{p}"), t.len());
                }
                let b = Block::new()
                    .field("cover", list(labels))
                    .field("continuous", yes_no(rep.is_continuous()))
                    .block("summands", terms)
                    .field("square_zero", yes_no(r.square_zero))
                    .field("contracting", list(r.contracting.iter().map(|&x| yes_no(x))))
                    .field("resolution", yes_no(r.holds()));
                (negative_unless(r.holds()), b)
            }
            Command::Cohomology { module, cover } => {
                let m = self.module(module)?;
                let rep = SemilatticeRep::new(m.rep.clone()).context(|| "cohomology".into())?;
                let cover = cover_indices(&m, cover.as_deref())?;
                let t = cohomology(&rep, &m, &cover, self.cli.window).context(|| "cohomology".into())?;
                let mut b = Block::new().field("window", format!("{}..{}", t.window.0, t.window.1));
                for (p, row) in t.dims.iter().enumerate() {
                    let mut h = Block::new().field("total", t.total(p));
                    for &(k, d) in row.iter().filter(|x| x.1 > 0) {
                        h.push(format!("degree {k}"), d);
                    }
                    b.push_block(format!("H{p}"), h);
                }
                warnings.extend(t.warnings.iter().cloned());
                (Status::Ok, b)
            }
            Command::Tensor { left, right } => match (self.value(left)?, self.value(right)?) {
                (Value::Module(a), Value::Module(c)) => {
                    let t = tensor(&a, &c).context(|| "tensor".into())?;
                    let qc = t.is_quasicoherent().context(|| "tensor".into())?;
                    let b = Block::new()
                        .block("vertices", module_block(&t))
                        .field("quasi_coherent", yes_no(qc.quasi_coherent));
                    (Status::Ok, b)
                }
                (Value::Complex(a), Value::Complex(c)) => {
                    let t = a.tensor(&c).context(|| "tensor".into())?;
                    let bad = t.first_nonzero_square().context(|| "tensor".into())?;
                    let mut comps = Block::new();
                    for n in t.degrees() {
                        let m = t.component(n);
                        comps.push(format!("degree {n}"), list((0..m.len()).map(|i| m.gens(i))));
                    }
                    let b = Block::new().block("components", comps).field("square_zero", yes_no(bad.is_none()));
                    (negative_unless(bad.is_none()), b)
                }
                _ => return Err(CliError::usage("tensor needs two modules or two complexes")),
            },
            Command::PushoutProduct { f, g, triple } => {
                let (f, g) = (as_chain_map(&self.value(f)?)?, as_chain_map(&self.value(g)?)?);
                match triple {
                    Some(name) => {
                        let t = self.triple(name)?;
                        let Some(cat) = t.frame.category() else {
                            return Err(CliError::usage(format!("triple {name} is not a model on complexes")));
                        };
                        let q = quillen_bifunctor_check(&f, &g, cat, &t.triple).context(|| "pushout-product".into())?;
                        let b = Block::new()
                            .field("inputs_cofibrant", yes_no(q.inputs_cofibrant))
                            .field("mono", yes_no(q.mono))
                            .field("cokernel_is_tensor", yes_no(q.derived_conflation))
                            .field("cofibration", yes_no(q.cofibration))
                            .field("trivial_expected", yes_no(q.trivial_expected))
                            .field("trivial", yes_no(q.trivial))
                            .field("unit_cofibrant", yes_no(q.unit_cofibrant))
                            .field("consistent", yes_no(q.consistent()));
                        (negative_unless(q.consistent()), b)
                    }
                    None => {
                        let p = pushout_product(&f, &g).context(|| "pushout-product".into())?;
                        let mono = is_degreewise_mono(&p.map).context(|| "pushout-product".into())?;
                        let coker = mono && cokernel_is_tensor(&p, &f, &g).context(|| "pushout-product".into())?;
                        let b = Block::new()
                            .field("degrees", format!("{}..{}", p.pushout.lo, p.pushout.hi()))
                            .field("mono", yes_no(mono))
                            .field("cokernel_is_tensor", yes_no(coker));
                        (Status::Ok, b)
                    }
                }
            }
            Command::BundleCheck { module, twists } => {
                let m = self.module(module)?;
                let lp = locally_projective(&m).context(|| "bundle-check".into())?;
                let mut b = Block::new().field("locally_projective", yes_no(lp));
                let mut ok = lp;
                if let Some(ts) = twists {
                    let ts = parse_ints(ts)?;
                    let gen =
                        lp && twist_generation_check(&m, &ts, self.cli.window).context(|| "bundle-check".into())?;
                    b.push("twists", list(&ts));
                    b.push("generated", yes_no(gen));
                    ok &= gen;
                }
                (negative_unless(ok), b)
            }
        };
        Ok((status, block, warnings))
    }
}

pub fn load(cli: &Cli) -> Result<Workspace, CliError> {
    let mut ws = Workspace::new();
    for path in &cli.files {
        ws.load(path)?;
    }
    Ok(ws)
}

/// Runs one parsed invocation; `echo` is the command line shown in the report.
pub fn execute(cli: &Cli, echo: &str) -> Report {
    let start = Instant::now();
    let outcome = load(cli).and_then(|ws| {
        let runner = Runner { cli, env: Env::new(&ws, &cli.poset)? };
        runner.run()
    });
    let mut report = match outcome {
        Ok((status, block, warnings)) => Report::new(echo, status, block).with_warnings(warnings),
        Err(e) => Report::failure(echo, &e),
    };
    if cli.timing {
        report.timing = Some(start.elapsed());
    }
    report
}
