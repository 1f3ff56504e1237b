use super::matrix::RingMatrix;
use super::ring::{RingElement, RingSpec};
use crate::error::Result;

/// `u * a * v = d` with `d` diagonal, its nonzero entries a divisibility chain,
/// and `u`, `v` invertible. The inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: RingMatrix,
    pub d: RingMatrix,
    pub v: RingMatrix,
    pub u_inv: RingMatrix,
    pub v_inv: RingMatrix,
    pub rank: usize,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<RingElement> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    ring: RingSpec,
    a: RingMatrix,
    u: RingMatrix,
    u_inv: RingMatrix,
    v: RingMatrix,
    v_inv: RingMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &RingElement) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &c.neg());
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &RingElement) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &c.neg());
    }

    fn scale_row(&mut self, r: usize, unit: &RingElement) {
        let inv = self.ring.unit_inverse(unit).expect("scaling by a unit");
        self.a.scale_row(r, unit);
        self.u.scale_row(r, unit);
        self.u_inv.scale_col(r, &inv);
    }

    fn norm(&self, i: usize, j: usize) -> Option<u64> {
        self.ring.norm(self.a.get(i, j))
    }
}

/// Smith normal form with deterministic pivoting: the entry of minimal
/// Euclidean norm is chosen, ties broken by row-major position.
pub fn snf(a: &RingMatrix) -> Result<SnfResult> {
    let ring = a.ring.clone();
    ring.require_euclidean()?;
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        ring: ring.clone(),
        a: a.clone(),
        u: RingMatrix::identity(ring.clone(), m),
        u_inv: RingMatrix::identity(ring.clone(), m),
        v: RingMatrix::identity(ring.clone(), n),
        v_inv: RingMatrix::identity(ring.clone(), n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if let Some(nm) = w.norm(i, j) {
                    if best.is_none_or(|(b, _, _)| nm < b) {
                        best = Some((nm, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let pivot = w.a.get(t, t).clone();
            for i in t + 1..m {
                if !w.a.get(i, t).is_zero() {
                    let (q, _) = ring.div_rem(w.a.get(i, t), &pivot);
                    w.add_row(i, t, &q.neg());
                }
            }
            for j in t + 1..n {
                if !w.a.get(t, j).is_zero() {
                    let (q, _) = ring.div_rem(w.a.get(t, j), &pivot);
                    w.add_col(j, t, &q.neg());
                }
            }
            let pnorm = w.norm(t, t).unwrap();
            let mut smaller: Option<(u64, bool, usize)> = None;
            for i in t + 1..m {
                if let Some(nm) = w.norm(i, t) {
                    if nm < pnorm && smaller.is_none_or(|(b, _, _)| nm < b) {
                        smaller = Some((nm, true, i));
                    }
                }
            }
            for j in t + 1..n {
                if let Some(nm) = w.norm(t, j) {
                    if nm < pnorm && smaller.is_none_or(|(b, _, _)| nm < b) {
                        smaller = Some((nm, false, j));
                    }
                }
            }
            if let Some((_, is_row, k)) = smaller {
                if is_row {
                    w.swap_rows(t, k);
                } else {
                    w.swap_cols(t, k);
                }
                continue;
            }
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    let e = w.a.get(i, j);
                    if !e.is_zero() && ring.exact_div(e, &pivot).is_none() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => w.add_row(t, i, &RingElement::one()),
                None => break,
            }
        }
        let unit = ring.normalizing_unit(w.a.get(t, t));
        if !unit.is_one() {
            w.scale_row(t, &unit);
        }
        t += 1;
    }
    Ok(SnfResult { u: w.u, d: w.a, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv, rank: t })
}

/// Solves `a * x = b` for a single column or a block of columns.
pub fn solve_linear(a: &RingMatrix, b: &RingMatrix) -> Result<Option<RingMatrix>> {
    let s = snf(a)?;
    Ok(solve_with(&s, a.cols(), b))
}

/// Solves using a precomputed Smith form of the coefficient matrix.
pub fn solve_with(s: &SnfResult, unknowns: usize, b: &RingMatrix) -> Option<RingMatrix> {
    let ring = &s.d.ring;
    let c = s.u.mul(&b.with_ring(ring.clone()));
    let mut y = RingMatrix::zeros(ring.clone(), unknowns, b.cols());
    for col in 0..b.cols() {
        for i in 0..c.rows() {
            let ci = c.get(i, col);
            if i < s.rank {
                y.set(i, col, ring.exact_div(ci, s.d.get(i, i))?);
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// Columns spanning the kernel of `a` (a basis over a PID).
pub fn kernel_basis(a: &RingMatrix) -> Result<RingMatrix> {
    let s = snf(a)?;
    let cols: Vec<usize> = (s.rank..a.cols()).collect();
    Ok(s.v.select_columns(&cols))
}
