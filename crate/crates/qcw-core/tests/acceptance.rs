//! Acceptance criteria 1–10, one PASS/FAIL line each on standard output.
//! Run alone with `cargo test -p qcw-core --test acceptance`.

mod common;

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{
    chain, euler_oracle, gluing_cohomology, interval, intervals, random_complex, random_mor, random_rep, rng, total,
};
use qcw_core::cech::{cech_resolution, cohomology, hom_twists, SemilatticeRep};
use qcw_core::complexes::{
    hom_complexes, injective_model, lift_cotorsion, quillen_bifunctor_check, BoundedComplex, ComplexCategory,
    ComplexMorphism,
};
use qcw_core::diagram::{
    chain_rep, hom_space, p1_rep, p1_twist_over, projective_generator, simple, DiagModule, DiagMorphism, FinitePoset,
    RingRep,
};
use qcw_core::exact_arith::RingMatrix;
use qcw_core::homotopy_algebra::{
    chain_euler_form, cokernel, ext1, ext1_classes, extn, generating_inflations, has_rlp, hom_basis, hom_dim,
    horseshoe, is_isomorphic, kernel, lifting, small_object_factorize, square_space, sum_maps, BoundQuiver, Conflation,
    CotorsionPair, GeneratingInflations, Mor, ObjectClass, Rep, DEFAULT_BUDGET,
};
use qcw_core::model_structures::{classify, homotopic, homotopy_hom, verify_triple, HomotopyRelation, HoveyTriple};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn twist_homs() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            let got = hom_twists(m, n).map_err(|e| e.to_string())?.dimension().map_err(|e| e.to_string())?;
            let oracle = total(&gluing_cohomology(n - m).0);
            let closed = if n < m { 0 } else { (n - m + 1) as usize };
            ensure(got == oracle && oracle == closed, || format!("Hom(O({m}), O({n})) = {got}, oracle {oracle}"))?;
            checked += 1;
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} pairs agree with the gluing oracle in {t:.2?}"))
}

fn nonzero(row: &[(i64, usize)]) -> Vec<(i64, usize)> {
    row.iter().copied().filter(|x| x.1 > 0).collect()
}

fn cech_twists() -> Outcome {
    let start = Instant::now();
    let rep = SemilatticeRep::new(p1_rep()).map_err(|e| e.to_string())?;
    for d in -5..=5i64 {
        let m = p1_twist_over(&rep.rep, d).map_err(|e| e.to_string())?;
        let complex = cech_resolution(&rep, &m, &[0, 1]).map_err(|e| e.to_string())?;
        let report = complex.verify().map_err(|e| e.to_string())?;
        ensure(report.holds(), || format!("O({d}): resolution identities fail: {report:?}"))?;
        let table = cohomology(&rep, &m, &[0, 1], None).map_err(|e| e.to_string())?;
        let (h0, h1) = (table.total(0), table.total(1));
        ensure(h0 == (d + 1).max(0) as usize && h1 == (-d - 1).max(0) as usize, || {
            format!("O({d}): H⁰ = {h0}, H¹ = {h1}")
        })?;
        let (o0, o1) = gluing_cohomology(d);
        let (g0, g1) = (nonzero(&table.dims[0]), nonzero(table.dims.get(1).map_or(&[][..], |r| &r[..])));
        ensure(g0 == o0 && g1 == o1, || format!("O({d}): degreewise tables differ from the oracle"))?;
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("11 twists resolved and matched in {t:.2?}"))
}

fn ext_engine() -> Outcome {
    let q = chain(2);
    let (s0, s1) = (Rep::simple(&q, 0), Rep::simple(&q, 1));
    let values = (ext1(&s0, &s1), ext1(&s1, &s0));
    ensure(values == (1, 0), || format!("ext1(S0,S1), ext1(S1,S0) = {values:?}"))?;
    let mut r = rng(3);
    for k in 0..100 {
        let q = chain(1 + k % 3);
        let (x, y) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let got = hom_dim(&x, &y) as i64 - ext1(&x, &y) as i64;
        let want = euler_oracle(&x.dims, &y.dims);
        ensure(got == want && chain_euler_form(&x.dims, &y.dims) == want, || {
            format!("pair {k}: hom − ext = {got}, oracle {want} for {:?}, {:?}", x.dims, y.dims)
        })?;
        ensure(extn(&x, &y, 2) == 0, || format!("pair {k}: ext2 ≠ 0"))?;
    }
    Ok("ext values exact, 100 random pairs match the Euler form, ext2 = 0".into())
}

fn projective_cells(q: &Arc<BoundQuiver>) -> GeneratingInflations {
    let zero = Rep::zero(q);
    GeneratingInflations::from_inflations((0..q.len()).map(|v| Mor::zero(&zero, &Rep::projective(q, v))).collect())
        .expect("zero maps into projectives are inflations")
}

fn small_object() -> Outcome {
    let q = chain(2);
    let zero = Rep::zero(&q);
    let s0 = Rep::simple(&q, 0);
    let gens = projective_cells(&q);
    let out = small_object_factorize(&gens, &Mor::zero(&zero, &s0), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(out.record.steps.len() == 1 && is_isomorphic(out.record.end(), &Rep::projective(&q, 0)), || {
        format!("S0 instance: {} steps, middle {:?}", out.record.steps.len(), out.record.end().dims)
    })?;
    let mut r = rng(4);
    let mut steps = 0;
    for k in 0..20 {
        let (h, gens) = if k == 0 {
            (Mor::zero(&zero, &s0), gens.clone())
        } else {
            let q = chain(2 + k % 2);
            let (x, y) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
            let gens =
                if k % 2 == 0 { projective_cells(&q) } else { generating_inflations(&Rep::simple(&q, q.len() - 1)) };
            (random_mor(&x, &y, &mut r), gens)
        };
        let out = small_object_factorize(&gens, &h, DEFAULT_BUDGET).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(gens.members.iter().all(|m| has_rlp(m.inflation(), &out.right)), || format!("instance {k}: RLP fails"))?;
        ensure(out.record.replay(&gens), || format!("instance {k}: replay differs from the record"))?;
        ensure(out.record.composite.then(&out.right) == h, || format!("instance {k}: factors do not compose to h"))?;
        steps += out.record.steps.len();
    }
    Ok(format!("20 instances verified ({steps} cell steps), S0 instance ends at P0 after 1 step"))
}

fn zero_ext_lifting() -> Outcome {
    let mut r = rng(5);
    let (mut found, mut tries) = (0, 0);
    while found < 50 {
        tries += 1;
        ensure(tries < 2000, || format!("only {found} admissible instances in {tries} draws"))?;
        let q = chain(2 + tries % 2);
        let (b, c) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let f = kernel(&random_mor(&b, &c, &mut r)).1;
        let (a, e) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let g = cokernel(&random_mor(&a, &e, &mut r)).1;
        if ext1(&cokernel(&f).0, &kernel(&g).0) != 0 {
            continue;
        }
        found += 1;
        let space = square_space(&f, &g);
        ensure(space.has_lifting(), || format!("instance {found}: a square has no filler"))?;
        for (u, v) in &space.squares {
            let filler = lifting(&f, &g, u, v).map_err(|e| e.to_string())?;
            let ok = filler.is_some_and(|l| f.then(&l) == *u && l.then(&g) == *v);
            ensure(ok, || format!("instance {found}: solver filler does not fill"))?;
        }
    }
    let q = chain(2);
    let (zero, s0, p0) = (Rep::zero(&q), Rep::simple(&q, 0), Rep::projective(&q, 0));
    let f = Mor::zero(&zero, &s0);
    let g = hom_basis(&p0, &s0).remove(0);
    ensure(g.is_epi() && ext1(&s0, &kernel(&g).0) == 1, || "P0 -> S0 is not the projective cover".into())?;
    let filler = lifting(&f, &g, &Mor::zero(&zero, &p0), &Mor::identity(&s0)).map_err(|e| e.to_string())?;
    ensure(filler.is_none(), || "0 -> S0 lifts against P0 -> S0".into())?;
    Ok(format!("50 admissible squares filled ({tries} draws), negative instance has no filler"))
}

/// Inflations and deflations among conflations built from the universe: split
/// sums and a basis of every Ext¹ group.
fn universe_conflations(universe: &[Rep]) -> Vec<Conflation> {
    let mut out = Vec::new();
    for x in universe {
        for z in universe {
            out.push(Conflation::split(x, z));
            out.extend(ext1_classes(z, x));
        }
    }
    out
}

fn contains_iso(list: &[Rep], x: &Rep) -> bool {
    list.iter().any(|y| is_isomorphic(x, y))
}

fn round_trip(name: &str, left: &ObjectClass, right: &ObjectClass, universe: &[Rep]) -> Result<(), String> {
    let conflations = universe_conflations(universe);
    let defl_b: Vec<&Mor> = conflations.iter().filter(|c| right.contains(c.left())).map(|c| &c.deflation).collect();
    let infl_a: Vec<&Mor> = conflations.iter().filter(|c| left.contains(c.right())).map(|c| &c.inflation).collect();
    // the lifting closures of the two morphism classes, restricted to the sample
    let l_class: Vec<&Conflation> =
        conflations.iter().filter(|c| defl_b.iter().all(|d| has_rlp(&c.inflation, d))).collect();
    let r_class: Vec<&Conflation> =
        conflations.iter().filter(|c| infl_a.iter().all(|i| has_rlp(i, &c.deflation))).collect();
    let cokernels: Vec<Rep> = l_class.iter().map(|c| c.right().clone()).collect();
    let kernels: Vec<Rep> = r_class.iter().map(|c| c.left().clone()).collect();
    for x in universe {
        ensure(contains_iso(&cokernels, x) == left.contains(x), || {
            format!("{name}: Coker(Infl) wrong on {:?}", x.dims)
        })?;
        ensure(contains_iso(&kernels, x) == right.contains(x), || format!("{name}: Ker(Defl) wrong on {:?}", x.dims))?;
    }
    Ok(())
}

fn wfs_round_trip() -> Outcome {
    let q = chain(3);
    let mut universe = vec![Rep::zero(&q)];
    universe.extend(intervals(&q));
    let proj = CotorsionPair::projective(&q);
    let inj = CotorsionPair::injective(&q);
    round_trip("(Proj, all)", &proj.left, &proj.right, &universe)?;
    round_trip("(all, Inj)", &inj.left, &inj.right, &universe)?;
    // the interval [i, 2] is projective and [0, j] injective on 0 -> 1 -> 2
    for (i, j) in [(0, 2), (1, 2), (2, 2), (0, 0), (0, 1), (1, 1)] {
        let x = interval(&q, i, j);
        ensure(proj.left.contains(&x) == (j == 2) && inj.right.contains(&x) == (i == 0), || {
            format!("class membership of [{i}, {j}]")
        })?;
    }
    Ok(format!("both pairs recovered on a {}-object universe", universe.len()))
}

/// X -> X ⊕ A given by (id, r), a quasi-isomorphism when A is acyclic.
fn into_sum(x: &Rep, a: &Rep, r: &mut ChaCha8Rng) -> Mor {
    Mor::identity(x).vjoin(&random_mor(x, a, r))
}

fn hovey_triple() -> Outcome {
    let poset = FinitePoset::chain(2);
    let cat = ComplexCategory::with_margin(&poset, 0, 1).map_err(|e| e.to_string())?;
    let model = injective_model(&cat);
    let q = &cat.base;
    let (s0, s1, p0) = (Rep::simple(q, 0), Rep::simple(q, 1), Rep::projective(q, 0));
    let sphere = |m: &Rep, n| cat.sphere(m, n).expect("inside the window");
    let disc = |m: &Rep, n| cat.disc(m, n).expect("inside the window");
    let universe = vec![
        cat.zero(),
        sphere(&s0, 0),
        sphere(&s1, 0),
        sphere(&s0, 1),
        sphere(&p0, 0),
        disc(&s1, 0),
        disc(&p0, 0),
        disc(&s0, 1),
    ];
    let report = verify_triple(&model, &universe).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("injective model fails: {report:?}"))?;

    let small = ComplexCategory::with_margin(&poset, 0, 0).map_err(|e| e.to_string())?;
    let model = injective_model(&small);
    let mut r = rng(7);
    let mut weak = 0;
    for k in 0..20 {
        let x = random_complex(&small, -1, &mut r, 1);
        let h = match k % 3 {
            0 => random_mor(&x, &random_complex(&small, -1, &mut r, 1), &mut r),
            1 => {
                let a =
                    small.cone(&Mor::identity(&random_complex(&small, -1, &mut r, 1))).map_err(|e| e.to_string())?;
                into_sum(&x, &a, &mut r)
            }
            _ => {
                let a = small.disc(&random_rep(q, &mut r, 1), 0).map_err(|e| e.to_string())?;
                Mor::identity(&x).hjoin(&random_mor(&a, &x, &mut r))
            }
        };
        let class = classify(&h, &model).map_err(|e| format!("map {k}: {e}"))?;
        let acyclic_cone = small.is_acyclic(&small.cone(&h).map_err(|e| e.to_string())?);
        ensure(class.weak_equivalence == acyclic_cone, || format!("map {k}: classify and cone disagree"))?;
        weak += usize::from(acyclic_cone);
    }

    let defect = HoveyTriple::even_dimension_defect(q);
    let plain = [Rep::zero(q), s0.clone(), s1.clone(), p0.clone()];
    let bad = verify_triple(&defect, &plain).map_err(|e| e.to_string())?;
    let witness = bad.retract_witness.as_ref().map(|(w, x)| format!("retract {:?} of {:?}", x.dims, w.dims));
    ensure(!bad.passed() && witness.is_some(), || "even-dimension triple passed".into())?;
    Ok(format!(
        "model passes on {} objects, 20 maps classified ({weak} weak equivalences), defect: {}",
        universe.len(),
        witness.unwrap_or_default()
    ))
}

fn related(f: &Mor, g: &Mor, triple: &HoveyTriple) -> Result<bool, String> {
    let report = homotopic(f, g, triple).map_err(|e| e.to_string())?;
    ensure(matches!(report.relation, HomotopyRelation::Both | HomotopyRelation::Neither), || {
        "left and right homotopy differ between cofibrant and fibrant objects".into()
    })?;
    Ok(report.relation == HomotopyRelation::Both)
}

fn homotopy_category() -> Outcome {
    let poset = FinitePoset::chain(2);
    let cat = ComplexCategory::with_margin(&poset, -1, 1).map_err(|e| e.to_string())?;
    let model = injective_model(&cat);
    let q = &cat.base;
    let (s0, s1, p0) = (Rep::simple(q, 0), Rep::simple(q, 1), Rep::projective(q, 0));
    let sphere = |m: &Rep, n| cat.sphere(m, n).expect("inside the window");
    let x = sphere(&s0, 0);
    let shifted = cat.shift(&sphere(&s1, 0), 1).map_err(|e| e.to_string())?;
    let derived = homotopy_hom(&x, &shifted, &model).map_err(|e| e.to_string())?.dimension();
    let literal = homotopy_hom(&x, &sphere(&s1, 1), &model).map_err(|e| e.to_string())?.dimension();
    ensure(derived == 1 && derived == ext1(&s0, &s1), || format!("Hom(S0, S1[1]) = {derived}"))?;

    // ten hom-spaces in a narrower window, sampled with known homotopic pairs
    let cat = ComplexCategory::with_margin(&poset, -1, 0).map_err(|e| e.to_string())?;
    let model = injective_model(&cat);
    let sphere = |m: &Rep, n| cat.sphere(m, n).expect("inside the window");
    let disc = |m: &Rep, n| cat.disc(m, n).expect("inside the window");
    let objects = [sphere(&s0, 0), sphere(&s1, 0), sphere(&p0, 0), sphere(&s1, -1), disc(&s0, -1)];
    let pairs = [(0, 3), (0, 1), (2, 0), (2, 3), (1, 1), (0, 0), (4, 0), (3, 2), (2, 2), (4, 1)];
    let mut r = rng(8);
    let (mut positive, mut classes) = (0, 0);
    for &(i, j) in &pairs {
        let hh = homotopy_hom(&objects[i], &objects[j], &model).map_err(|e| e.to_string())?;
        let (cx, fy) = (&hh.cofibrant_replacement.source, &hh.fibrant_replacement.target);
        let cover = model.fibrant_pair.left_approximation(fy, model.budget).map_err(|e| e.to_string())?;
        let null = |r: &mut ChaCha8Rng| random_mor(cx, cover.middle(), r).then(&cover.deflation);
        let f = random_mor(cx, fy, &mut r);
        let g = f.add(&null(&mut r));
        let h = g.add(&null(&mut r));
        let other = random_mor(cx, fy, &mut r);
        let samples = [&f, &g, &h, &other];
        let mut rel = [[false; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                if a != b || a == 0 {
                    rel[a][b] = related(samples[a], samples[b], &model)?;
                }
            }
        }
        ensure(rel[0][0], || format!("({i}, {j}): not reflexive"))?;
        for a in 0..4 {
            rel[a][a] = true;
            for b in 0..4 {
                ensure(rel[a][b] == rel[b][a], || format!("({i}, {j}): not symmetric"))?;
                for c in 0..4 {
                    ensure(!(rel[a][b] && rel[b][c]) || rel[a][c], || format!("({i}, {j}): not transitive"))?;
                }
            }
        }
        ensure(rel[0][1] && rel[1][2], || format!("({i}, {j}): null-homotopic differences not detected"))?;
        positive += usize::from(hh.dimension() > 0);
        classes += usize::from(!rel[0][3]);
    }
    Ok(format!(
        "Hom(S0, S1[1]) = 1 = ext1 (literal S¹(S1) gives {literal}); equivalence relation on 10 hom-spaces ({positive} nonzero, {classes} with distinct samples)"
    ))
}

fn field_complex(cat: &ComplexCategory, x: &Rep, rep: &Arc<RingRep>) -> Result<BoundedComplex, String> {
    BoundedComplex::from_rep(cat, x, rep).map_err(|e| e.to_string())
}

fn chain_map(cat: &ComplexCategory, f: &Mor, rep: &Arc<RingRep>) -> Result<ComplexMorphism, String> {
    let (x, y) = (field_complex(cat, &f.source, rep)?, field_complex(cat, &f.target, rep)?);
    let maps = x
        .degrees()
        .map(|n| {
            let m = cat.component_map(f, n).to_diag(rep)?;
            DiagMorphism::new(x.component(n), y.component(n), m.components)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    ComplexMorphism::new(x, y, maps).map_err(|e| e.to_string())
}

fn twist_complex(rep: &Arc<RingRep>, a: i64, b: i64, r: &mut ChaCha8Rng) -> Result<BoundedComplex, String> {
    let (m, n) = (p1_twist_over(rep, a).map_err(|e| e.to_string())?, p1_twist_over(rep, b).map_err(|e| e.to_string())?);
    let w = a.abs() + b.abs() + 1;
    let homs = hom_space(&m, &n, Some((-w, w))).map_err(|e| e.to_string())?;
    if homs.is_empty() {
        return Ok(BoundedComplex::sphere(&m, 0));
    }
    let d = homs[r.gen_range(0..homs.len())].clone();
    BoundedComplex::new(rep.clone(), r.gen_range(-1..=0), vec![m, n], vec![d]).map_err(|e| e.to_string())
}

fn unit_law(x: &BoundedComplex) -> Result<bool, String> {
    let unit = BoundedComplex::unit(&x.rep).map_err(|e| e.to_string())?;
    let xu = x.tensor(&unit).map_err(|e| e.to_string())?;
    if xu.degrees() != x.degrees() {
        return Ok(false);
    }
    let maps = x
        .degrees()
        .map(|n| {
            let (a, b) = (xu.component(n), x.component(n));
            let ids = (0..a.len()).map(|v| RingMatrix::identity(b.carrier(v), b.gens(v))).collect();
            DiagMorphism::new(a, b, ids)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let isos = maps.iter().map(|m| m.is_iso()).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    Ok(isos.into_iter().all(|b| b) && ComplexMorphism::new(xu, x.clone(), maps).is_ok())
}

fn square_zero(x: &qcw_core::Result<BoundedComplex>) -> bool {
    matches!(x.as_ref().map(|c| c.first_nonzero_square()), Ok(Ok(None)))
}

fn top_of_disc(m: &DiagModule, n: i64) -> ComplexMorphism {
    let (s, d) = (BoundedComplex::sphere(m, n + 1), BoundedComplex::disc(m, n));
    ComplexMorphism::new(s, d, vec![DiagMorphism::identity(m)]).expect("the top of a disc is a subcomplex")
}

fn from_zero(y: &BoundedComplex) -> ComplexMorphism {
    ComplexMorphism::zero(&BoundedComplex::zero(&y.rep), y)
}

fn monoidal() -> Outcome {
    let poset = FinitePoset::chain(2);
    let rep = chain_rep(2);
    let cat = ComplexCategory::new(&poset, -1, 1).map_err(|e| e.to_string())?;
    let mut r = rng(9);
    let complexes: Vec<BoundedComplex> =
        (0..100).map(|_| field_complex(&cat, &random_complex(&cat, -1, &mut r, 2), &rep)).collect::<Result<_, _>>()?;
    for (k, pair) in complexes.windows(2).enumerate() {
        ensure(square_zero(&pair[0].tensor(&pair[1])), || format!("tensor {k}: ∂² ≠ 0"))?;
        ensure(square_zero(&hom_complexes(&pair[0], &pair[1])), || format!("hom {k}: ∂² ≠ 0"))?;
    }
    let last = &complexes[99];
    ensure(square_zero(&last.tensor(&complexes[0])) && square_zero(&hom_complexes(last, &complexes[0])), || {
        "wrap-around pair: ∂² ≠ 0".into()
    })?;

    let p1 = p1_rep();
    let mut units = 0;
    for (a, b) in [(-1, 0), (0, 2), (-2, 1), (1, 1), (0, 0), (2, -1)] {
        let x = twist_complex(&p1, a, b, &mut r)?;
        ensure(unit_law(&x)?, || format!("unit law fails for O({a}) -> O({b})"))?;
        ensure(square_zero(&x.tensor(&x)) && square_zero(&hom_complexes(&x, &x)), || {
            format!("twists {a}, {b}: ∂² ≠ 0")
        })?;
        units += 1;
    }

    let big = ComplexCategory::with_margin(&poset, -2, 3).map_err(|e| e.to_string())?;
    let model = injective_model(&big);
    let (s0, s1, p0) = (simple(&rep, 0), simple(&rep, 1), projective_generator(&rep, 0));
    let mut cofibrations = vec![
        top_of_disc(&s0, -1),
        top_of_disc(&p0, 0),
        from_zero(&BoundedComplex::sphere(&p0, 0)),
        from_zero(&BoundedComplex::disc(&s1, 0)),
        from_zero(&BoundedComplex::sphere(&s1, 1)),
    ];
    for _ in 0..3 {
        let x = random_complex(&cat, -1, &mut r, 1);
        let f = random_mor(&x, &random_complex(&cat, -1, &mut r, 1), &mut r);
        cofibrations.push(chain_map(&cat, &kernel(&f).1, &rep)?);
        let a = cat.disc(&random_rep(&cat.base, &mut r, 1), 0).map_err(|e| e.to_string())?;
        let (inc, _, _, _) = sum_maps(&x, &a);
        cofibrations.push(chain_map(&cat, &inc, &rep)?);
    }
    let (mut checked, mut trivial) = (0, 0);
    for (i, f) in cofibrations.iter().enumerate() {
        for g in cofibrations.iter().skip(i).step_by(3) {
            let report = quillen_bifunctor_check(f, g, &big, &model).map_err(|e| format!("pair {i}: {e}"))?;
            ensure(report.cofibration && report.derived_conflation, || {
                format!("pair {i}: not a cofibration with cokernel C ⊗ D")
            })?;
            ensure(!report.trivial_expected || report.trivial, || format!("pair {i}: triviality lost"))?;
            checked += 1;
            trivial += usize::from(report.trivial_expected);
        }
    }
    Ok(format!(
        "∂² = 0 on 100 complexes, unit law on {units} P¹ complexes, {checked} pushout-products ({trivial} trivial)"
    ))
}

fn horseshoes_and_lifts() -> Outcome {
    let mut r = rng(10);
    for k in 0..20 {
        let q = chain(2 + k % 2);
        let pair = CotorsionPair::injective(&q);
        let (x, z) = (random_rep(&q, &mut r, 2), random_rep(&q, &mut r, 2));
        let classes = ext1_classes(&z, &x);
        let row = if classes.is_empty() || k % 3 == 0 {
            Conflation::split(&x, &z)
        } else {
            classes[r.gen_range(0..classes.len())].clone()
        };
        let ax = pair.right_approximation(&x, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let az = pair.right_approximation(&z, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let shoe = horseshoe(&row, &ax, &az).map_err(|e| format!("instance {k}: {e}"))?;
        let rows_ok = shoe.is_exact() && row.is_exact();
        let column = &shoe.middle;
        let columns_ok = column.left() == row.middle()
            && column.middle() == shoe.b_row.middle()
            && column.right() == shoe.a_row.middle()
            && shoe.b_row.left() == ax.middle()
            && shoe.b_row.right() == az.middle()
            && [ax.middle(), az.middle(), column.middle()].iter().all(|b| pair.right.contains(b))
            && [ax.right(), az.right(), column.right()].iter().all(|a| pair.left.contains(a));
        ensure(rows_ok && columns_ok, || format!("instance {k}: horseshoe fails to validate"))?;
    }

    let cat = ComplexCategory::new(&FinitePoset::chain(2), -2, 2).map_err(|e| e.to_string())?;
    let pairs = [CotorsionPair::injective(&cat.base), CotorsionPair::projective(&cat.base)];
    let mut lifted = 0;
    for k in 0..8 {
        let x = if k % 2 == 0 {
            cat.cone(&Mor::identity(&random_complex(&cat, -1, &mut r, 1))).map_err(|e| e.to_string())?
        } else {
            cat.disc(&random_rep(&cat.base, &mut r, 2), r.gen_range(-2..=1)).map_err(|e| e.to_string())?
        };
        for pair in &pairs {
            let out = lift_cotorsion(pair, &cat, &x, DEFAULT_BUDGET).map_err(|e| format!("complex {k}: {e}"))?;
            let (b, a) = (out.conflation.middle(), out.conflation.right());
            let ok = out.is_valid() && cat.is_in_tilde(&pair.right, b) && cat.is_in_tilde(&pair.left, a);
            ensure(ok, || format!("complex {k}: lifted approximation leaves the tilde classes"))?;
            ensure(out.conflation.left() == &x, || format!("complex {k}: conflation does not start at X"))?;
            lifted += 1;
        }
    }
    Ok(format!("20 horseshoes validate, {lifted} lifted approximations land in both tilde classes"))
}

/// Writes past the test harness capture so the lines show in every run.
fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: [Check; 10] = [
        ("twist homs", twist_homs),
        ("cech resolutions of twists", cech_twists),
        ("ext engine", ext_engine),
        ("small object argument", small_object),
        ("zero ext gives lifting", zero_ext_lifting),
        ("wfs and cotorsion round trip", wfs_round_trip),
        ("hovey triple", hovey_triple),
        ("homotopy category", homotopy_category),
        ("monoidal checks", monoidal),
        ("horseshoe and lifted pairs", horseshoes_and_lifts),
    ];
    let mut failed = Vec::new();
    report(String::new());
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => report(format!("criterion {}: PASS {name}: {detail} [{:.2?}]", k + 1, start.elapsed())),
            Err(why) => {
                report(format!("criterion {}: FAIL {name}: {why}", k + 1));
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
