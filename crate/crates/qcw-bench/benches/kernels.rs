use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use qcw_core::cech::{cech_resolution, cohomology, hom_twists, SemilatticeRep};
use qcw_core::complexes::{injective_model, ComplexCategory};
use qcw_core::diagram::{p1_rep, p1_twist_over, FinitePoset};
use qcw_core::exact_arith::{rat, QMat};
use qcw_core::homotopy_algebra::{
    ext1, generating_inflations, hom_basis, small_object_factorize, BoundQuiver, CotorsionPair, GeneratingInflations,
    Mor, Rep, DEFAULT_BUDGET,
};
use qcw_core::model_structures::{homotopy_hom, verify_triple};

fn chain(n: usize) -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(n)))
}

/// A fixed representation of the chain with every space of dimension `d`.
fn dense(q: &Arc<BoundQuiver>, d: usize, salt: i64) -> Rep {
    let maps =
        q.arrows.iter().map(|_| QMat::from_fn(d, d, |i, j| rat((i as i64 * 3 + j as i64 + salt) % 5 - 2))).collect();
    Rep::new(q.clone(), vec![d; q.len()], maps).unwrap()
}

fn quiver_kernels(c: &mut Criterion) {
    let q = chain(4);
    let (x, y) = (dense(&q, 3, 1), dense(&q, 3, 2));
    c.bench_function("hom_basis chain4 dim3", |b| b.iter(|| hom_basis(black_box(&x), black_box(&y))));
    c.bench_function("ext1 chain4 dim3", |b| b.iter(|| ext1(black_box(&x), black_box(&y))));

    let q3 = chain(3);
    let gens = GeneratingInflations::union((0..3).map(|v| generating_inflations(&Rep::simple(&q3, v))));
    let h = Mor::zero(&dense(&q3, 2, 3), &Rep::zero(&q3));
    c.bench_function("small object argument chain3 dim2", |b| {
        b.iter(|| small_object_factorize(&gens, black_box(&h), DEFAULT_BUDGET).unwrap())
    });
    let pair = CotorsionPair::injective(&q);
    c.bench_function("injective approximation chain4", |b| {
        b.iter(|| pair.approximations(black_box(&x), DEFAULT_BUDGET).unwrap())
    });
}

fn cech_kernels(c: &mut Criterion) {
    let rep = SemilatticeRep::new(p1_rep()).unwrap();
    let m = p1_twist_over(&rep.rep, -4).unwrap();
    c.bench_function("cech resolution O(-4)", |b| {
        b.iter(|| cech_resolution(&rep, black_box(&m), &[0, 1]).unwrap().verify().unwrap())
    });
    c.bench_function("cohomology O(-4)", |b| b.iter(|| cohomology(&rep, black_box(&m), &[0, 1], None).unwrap()));
    c.bench_function("hom twists O(-2) O(2)", |b| b.iter(|| hom_twists(black_box(-2), black_box(2)).unwrap()));
}

fn model_kernels(c: &mut Criterion) {
    let cat = ComplexCategory::with_margin(&FinitePoset::chain(2), -1, 1).unwrap();
    let model = injective_model(&cat);
    let (s0, s1) = (Rep::simple(&cat.base, 0), Rep::simple(&cat.base, 1));
    let x = cat.sphere(&s0, 0).unwrap();
    let y = cat.sphere(&s1, -1).unwrap();
    c.bench_function("homotopy hom S0 to S1[1]", |b| {
        b.iter(|| homotopy_hom(black_box(&x), black_box(&y), &model).unwrap())
    });
    let small = ComplexCategory::with_margin(&FinitePoset::chain(2), 0, 0).unwrap();
    let model = injective_model(&small);
    let universe = vec![small.zero(), small.sphere(&s0, 0).unwrap(), small.disc(&s1, 0).unwrap()];
    c.bench_function("verify injective model, 3 objects", |b| {
        b.iter(|| verify_triple(&model, black_box(&universe)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = quiver_kernels, cech_kernels, model_kernels
}
criterion_main!(benches);
