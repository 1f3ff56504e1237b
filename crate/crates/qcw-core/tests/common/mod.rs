//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcw_core::complexes::ComplexCategory;
use qcw_core::diagram::FinitePoset;
use qcw_core::exact_arith::{rat, QMat};
use qcw_core::homotopy_algebra::{cokernel, generic_combination, hom_basis, BoundQuiver, Mor, Rep};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn chain(n: usize) -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::from_poset(&FinitePoset::chain(n)))
}

/// Rank over Q by plain Gaussian elimination on machine rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> =
        rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != Ratio::from_integer(0) {
                let f = m[i][c] / m[r][c];
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot).skip(c) {
                    *x -= *p * f;
                }
            }
        }
        r += 1;
    }
    r
}

/// (internal degree, dimension) pairs.
pub type Table = Vec<(i64, usize)>;

/// H⁰ and H¹ of O(d) on the projective line, per internal degree, from the
/// two-chart gluing: sections x^a (a ≥ 0) on the first chart and x^{d−b}
/// (b ≥ 0) on the second, compared on the overlap through f0 − f1.
pub fn gluing_cohomology(d: i64) -> (Table, Table) {
    let w = d.abs() + 2;
    let (mut h0, mut h1) = (Vec::new(), Vec::new());
    for k in -w..=w {
        // one overlap monomial x^k; at most one section from each chart lands on it
        let mut row = Vec::new();
        if k >= 0 {
            row.push(1);
        }
        if k <= d {
            row.push(-1);
        }
        let r = if row.is_empty() { 0 } else { rank(&[row.clone()]) };
        if row.len() > r {
            h0.push((k, row.len() - r));
        }
        if 1 > r {
            h1.push((k, 1 - r));
        }
    }
    (h0, h1)
}

pub fn total(table: &[(i64, usize)]) -> usize {
    table.iter().map(|x| x.1).sum()
}

/// dim Hom − dim Ext¹ for the linearly oriented chain 0 → 1 → … → n−1.
pub fn euler_oracle(x: &[usize], y: &[usize]) -> i64 {
    let mut form = 0i64;
    for i in 0..x.len() {
        form += (x[i] * y[i]) as i64;
        if i + 1 < y.len() {
            form -= (x[i] * y[i + 1]) as i64;
        }
    }
    form
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMat {
    QMat::from_fn(rows, cols, |_, _| rat(rng.gen_range(-2..=2)))
}

/// A random representation of a quiver without relations.
pub fn random_rep(q: &Arc<BoundQuiver>, rng: &mut ChaCha8Rng, max_dim: usize) -> Rep {
    assert!(q.relations.is_empty(), "random_rep needs a quiver without relations");
    let dims: Vec<usize> = (0..q.len()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = q.arrows.iter().map(|&(s, t)| random_matrix(rng, dims[t], dims[s])).collect();
    Rep::new(q.clone(), dims, maps).expect("no relations to violate")
}

pub fn random_mor(x: &Rep, y: &Rep, rng: &mut ChaCha8Rng) -> Mor {
    generic_combination(x, y, &hom_basis(x, y), rng)
}

/// The interval module supported on i..=j of a chain quiver.
pub fn interval(q: &Arc<BoundQuiver>, i: usize, j: usize) -> Rep {
    let dims: Vec<usize> = (0..q.len()).map(|v| usize::from((i..=j).contains(&v))).collect();
    let maps = q
        .arrows
        .iter()
        .map(|&(s, t)| if dims[s] == 1 && dims[t] == 1 { QMat::identity(1) } else { QMat::zeros(dims[t], dims[s]) })
        .collect();
    Rep::new(q.clone(), dims, maps).unwrap()
}

pub fn intervals(q: &Arc<BoundQuiver>) -> Vec<Rep> {
    let n = q.len();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| interval(q, i, j)).collect()
}

/// A random complex A -> B -> C placed in degrees lo..=lo+2, with the second
/// differential factored through the cokernel of the first.
pub fn random_complex(cat: &ComplexCategory, lo: i64, rng: &mut ChaCha8Rng, max_dim: usize) -> Rep {
    let q = &cat.base;
    let (a, b, c) = (random_rep(q, rng, max_dim), random_rep(q, rng, max_dim), random_rep(q, rng, max_dim));
    let f = random_mor(&a, &b, rng);
    let (coker, proj) = cokernel(&f);
    let g = proj.then(&random_mor(&coker, &c, rng));
    cat.assemble(lo, &[a, b, c], &[f, g]).expect("window holds lo..=lo+2")
}
